#include <iostream>

#include "rematch/cli.hh"

int main(int argc, char** argv) { return rematch::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
