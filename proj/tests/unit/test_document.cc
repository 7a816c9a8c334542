#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hh"
#include "generators.hh"
#include "rematch/document.hh"
#include "rematch/fst.hh"
#include "rematch/minimize.hh"

using namespace rematch;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(REMATCH_FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string document_error(std::string_view bytes) {
    try {
        load(bytes);
    } catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

const std::string two_state = R"({
  "format_version": 1,
  "kind": "mealy",
  "input_alphabet": ["a","b"],
  "output_alphabet": ["A"],
  "initial": 0,
  "states": 2,
  "transitions": [
    {"from":0,"input":"a","outputs":["A"],"to":1},
    {"from":0,"input":"b","outputs":[],"to":0}
  ],
  "complete": false
}
)";

} // namespace

TEST_CASE("rematch::save is canonical") {
    CHECK(save(load(two_state)) == two_state);

    const Expr e3 = parse(testing::e3_text);
    const Mealy complete = min_comp(subset_tc(thompson(e3)));
    const std::string doc = save(complete);
    CHECK(doc.find("\"states\": 9,") != std::string::npos);
    CHECK(doc.find("\"complete\": true") != std::string::npos);
    CHECK(save(load(doc)) == doc);

    const Mealy shown = trim_sink(min_comp(subset_t(thompson(e3)))).machine;
    const std::string fig = save(shown);
    CHECK(fig.find("\"states\": 8,") != std::string::npos);
    CHECK(fig.find("\"complete\": false") != std::string::npos);
}

TEST_CASE("rematch::load round-trips machines") {
    testing::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        const Expr e = testing::random_expr(rng);
        CAPTURE(e.to_string());
        for (const Mealy& m : {subset_t(thompson(e)), min_comp(subset_tc(thompson(e)))}) {
            const std::string doc = save(m);
            const Mealy back = load_mealy(doc);
            CHECK(is_isomorphic(back, m));
            CHECK(back.initial() == m.initial());
            CHECK(back.provenance() == m.provenance());
            CHECK(save(back) == doc);
        }
        const Fst fst = thompson(e);
        const std::string doc = save(fst);
        const Machine back = load(doc);
        REQUIRE(std::holds_alternative<Fst>(back));
        const Fst& f = std::get<Fst>(back);
        CHECK(f.transitions() == fst.transitions());
        CHECK(f.initials() == fst.initials());
        CHECK(f.finals() == fst.finals());
        CHECK(save(f) == doc);
    }
}

TEST_CASE("rematch::load of the running example transducer") {
    const Machine m = load(read_fixture("e3_fst.json"));
    REQUIRE(std::holds_alternative<Fst>(m));
    CHECK(subset_t(std::get<Fst>(m)).state_count() == 10);
    CHECK(save(m) == save(thompson(parse(testing::e3_text))));
}

TEST_CASE("rematch::load validates") {
    std::string dup = two_state;
    dup.replace(dup.find(R"("input":"b")"), 11, R"("input":"a")");
    CHECK_THROWS_AS(load(dup), DeterminismError);

    std::string out_of_range = two_state;
    out_of_range.replace(out_of_range.find(R"("to":1)"), 6, R"("to":7)");
    CHECK(document_error(out_of_range).rfind("$.transitions[0].to:", 0) == 0);

    std::string wrong_flag = two_state;
    wrong_flag.replace(wrong_flag.find("false"), 5, "true");
    CHECK(document_error(wrong_flag).rfind("$.complete:", 0) == 0);

    std::string bad_output = two_state;
    bad_output.replace(bad_output.find(R"(["A"],"to")"), 5, R"(["Z"])");
    CHECK(document_error(bad_output).rfind("$.transitions[0].outputs[0]:", 0) == 0);

    CHECK(document_error("{").rfind("$:", 0) == 0);
    CHECK(document_error("[]").rfind("$:", 0) == 0);
    CHECK(document_error(R"({"format_version": 2})").rfind("$.format_version:", 0) == 0);
    CHECK(document_error(R"({"format_version": 1, "kind": "dfa"})").rfind("$.kind:", 0) == 0);
    CHECK(document_error(R"({"format_version": 1, "kind": "mealy"})").rfind("$.input_alphabet:", 0) == 0);
    CHECK_THROWS_AS(load_mealy(save(thompson(parse("a")))), DocumentError);
}

TEST_CASE("rematch::to_dot") {
    Mealy loop({'a'});
    loop.add_state();
    loop.set_initial(0);
    loop.set_transition(0, 'a', 0, OutputSet{});
    const std::string dot = to_dot(loop);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("  0;\n") != std::string::npos);
    CHECK(dot.find("0 -> 0 [label=\"a\"]") != std::string::npos);
    CHECK(dot.find("__start -> 0") != std::string::npos);

    const Mealy shown = trim_sink(min_comp(subset_t(thompson(parse(testing::e3_text))))).machine;
    const std::string fig = to_dot(shown);
    CHECK(fig == to_dot(shown));
    std::size_t nodes = 0;
    std::istringstream lines(fig);
    for (std::string line; std::getline(lines, line);) {
        if (line.size() > 3 && line.back() == ';' && line.find("->") == std::string::npos &&
            std::isdigit(static_cast<unsigned char>(line[2])))
            ++nodes;
    }
    CHECK(nodes == 8);
    CHECK(fig.find("/{alpha}") != std::string::npos);

    const std::string fst = to_dot(thompson(parse("a<A>|b")));
    CHECK(fst.find("a/A") != std::string::npos);
    CHECK(fst.find("ε") != std::string::npos);
    CHECK(fst.find("doublecircle") != std::string::npos);
}
