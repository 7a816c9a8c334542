#include "rematch/cli.hh"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "rematch/document.hh"
#include "rematch/errors.hh"
#include "rematch/fst.hh"
#include "rematch/minimize.hh"
#include "rematch/oracle.hh"
#include "rematch/runtime.hh"

namespace rematch {

CompileResult compile(const Expr& e, const CompileOptions& options) {
    CompileResult result;
    const Fst fst = thompson(e);
    result.stages.emplace_back("thompson", fst.state_count());
    if (options.mode == MatchMode::Exact) {
        result.machine = subset_t(fst);
        result.stages.emplace_back("subset_t", result.machine.state_count());
    } else {
        result.machine = subset_tc(fst);
        result.stages.emplace_back("subset_tc", result.machine.state_count());
    }
    if (options.minimize) {
        result.machine = min_comp(result.machine);
        result.stages.emplace_back("min_comp", result.machine.state_count());
    }
    if (options.trim) {
        result.machine = trim_sink(result.machine).machine;
        result.stages.emplace_back("trim_sink", result.machine.state_count());
    }
    return result;
}

namespace {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw FileError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    if (file.bad()) throw FileError("cannot read '" + path + "'");
    return buf.str();
}

void write_all(const std::string& path, const std::string& bytes, std::ostream& out) {
    if (path == "-") {
        out << bytes;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FileError("cannot open '" + path + "' for writing");
    file << bytes;
    if (!file) throw FileError("cannot write '" + path + "'");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("REMATCH_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("REMATCH_SEED", "not an unsigned integer");
        }
    }
    return 1;
}

std::string quote(const Word& w) { return "\"" + w + "\""; }

// --- compile ---------------------------------------------------------------

int cmd_compile(const std::string& text, const std::string& mode, bool no_minimize, bool trim,
                const std::string& output, std::ostream& out, std::ostream& err) {
    CompileOptions options;
    options.mode = mode == "complete" ? MatchMode::Complete : MatchMode::Exact;
    options.minimize = !no_minimize;
    options.trim = trim;
    const CompileResult result = compile(parse(text), options);
    for (const auto& [stage, count] : result.stages) err << stage << ": " << count << " states\n";
    err << "final: " << result.machine.state_count() << " states\n";
    write_all(output, save(result.machine), out);
    return exit_code::ok;
}

// --- run / dot -------------------------------------------------------------

int cmd_run(const std::string& model, const std::string& input, bool keep_newlines, std::istream& in,
            std::ostream& out) {
    if (model == "-" && input == "-") throw CLI::ValidationError("-m", "machine and input cannot both be stdin");
    const Mealy machine = load_mealy(read_all(model, in));
    StreamOptions options;
    options.skip_newlines = !keep_newlines;
    auto emit = [&](const MatchEvent& e) { out << format_event(e) << '\n'; };
    if (input == "-") {
        run_stream(machine, in, emit, options);
    } else {
        std::ifstream file(input, std::ios::binary);
        if (!file) throw FileError("cannot open '" + input + "'");
        run_stream(machine, file, emit, options);
    }
    return exit_code::ok;
}

int cmd_dot(const std::string& model, std::istream& in, std::ostream& out) {
    out << to_dot(load(read_all(model, in)));
    return exit_code::ok;
}

// --- oracle-check ----------------------------------------------------------

class Checker {
public:
    Checker(const Expr& e, std::ostream& out) : e_(e), out_(out) {}

    bool behaviour(std::size_t max_len) {
        const BehaviourTable expected = behaviour_of(e_, max_len);
        const Fst fst = thompson(e_);
        const Mealy exact = subset_t(fst);
        return same("thompson", expected, fst_output(fst, max_len)) &&
               same("subset_t", expected, machine_output(exact, max_len)) &&
               same("min_comp", expected, machine_output(min_comp(exact), max_len));
    }

    bool complete_word(const Mealy& machine, const Word& w) {
        const auto expected = complete_oracle(e_, w);
        Session session(machine);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const OutputSet got = machine.label(session.advance(w[i]));
            if (got != expected[i]) {
                out_ << "mismatch (complete): word " << quote(w) << " position " << i + 1 << ": expected "
                     << format_output_set(expected[i]) << ", machine " << format_output_set(got) << '\n';
                return false;
            }
        }
        return true;
    }

private:
    bool same(const char* stage, const BehaviourTable& expected, const BehaviourTable& got) {
        auto diff = first_difference(expected, got);
        if (!diff) return true;
        auto lookup = [&](const BehaviourTable& t) {
            const OutputSet* s = t.find(*diff);
            return format_output_set(s ? *s : OutputSet{});
        };
        out_ << "mismatch (" << stage << "): word " << quote(*diff) << ": expected " << lookup(expected) << ", machine "
             << lookup(got) << '\n';
        return false;
    }

    const Expr& e_;
    std::ostream& out_;
};

int cmd_oracle_check(const std::string& text, std::size_t max_len, std::size_t words, std::uint64_t seed,
                     std::ostream& out) {
    const Expr e = parse(text);
    Checker checker(e, out);
    if (!checker.behaviour(max_len)) return exit_code::mismatch;

    const Mealy complete = min_comp(subset_tc(thompson(e)));
    const auto& sigma = complete.input_alphabet();
    std::size_t checked = 0;
    if (!sigma.empty()) {
        // Every position of a length-N word is judged on its own prefix, so
        // the words of length exactly N cover all shorter ones.
        std::vector<std::size_t> digits(max_len, 0);
        Word w(max_len, sigma[0]);
        while (true) {
            if (!checker.complete_word(complete, w)) return exit_code::mismatch;
            ++checked;
            std::size_t i = 0;
            while (i < max_len && ++digits[i] == sigma.size()) {
                digits[i] = 0;
                w[i] = sigma[0];
                ++i;
            }
            if (i == max_len) break;
            w[i] = sigma[digits[i]];
        }
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < words; ++k) {
            Word r(max_len + 1 + rng() % 20, '\0');
            for (char& c : r) c = sigma[rng() % sigma.size()];
            if (!checker.complete_word(complete, r)) return exit_code::mismatch;
            ++checked;
        }
    }
    out << "ok: behaviour up to length " << max_len << ", " << checked << " complete-matching words\n";
    return exit_code::ok;
}

// --- bench -----------------------------------------------------------------

int cmd_bench(const std::string& model, std::uint64_t bytes, std::uint64_t seed, std::istream& in,
              std::ostream& out, std::ostream& err) {
    const Mealy machine = load_mealy(read_all(model, in));
    const auto& sigma = machine.input_alphabet();
    if (sigma.empty()) throw CLI::ValidationError("-m", "machine has an empty input alphabet");

    std::mt19937_64 rng(seed);
    std::vector<InputSymbol> chunk(1 << 16);
    Session session(machine);
    std::uint64_t events = 0;
    const auto started = std::chrono::steady_clock::now();
    for (std::uint64_t done = 0; done < bytes;) {
        const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(chunk.size(), bytes - done));
        for (std::size_t i = 0; i < n; ++i) chunk[i] = sigma[rng() % sigma.size()];
        for (std::size_t i = 0; i < n; ++i) events += session.advance(chunk[i]) != 0;
        done += n;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    out << "symbols: " << session.position() << '\n';
    out << "lookups: " << session.lookup_count() << '\n';
    out << "events: " << events << '\n';
    out << "session_bytes: " << sizeof(Session) << '\n';
    out << "seconds: " << seconds << '\n';
    out << "throughput: " << (seconds > 0 ? static_cast<double>(bytes) / seconds : 0.0) << " symbols/s\n";
    if (session.lookup_count() != bytes) {
        err << "error: " << session.lookup_count() << " lookups for " << bytes << " symbols\n";
        return exit_code::internal;
    }
    return exit_code::ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile pattern regexps into Mealy machines and run them over streams", "rematch"};
    app.require_subcommand(1);

    std::string expr, mode = "exact", output = "-", model, input = "-";
    bool no_minimize = false, trim = false, keep_newlines = false;
    std::size_t max_len = 4, words = 0;
    std::uint64_t bytes = 1000000, seed = 0;
    bool seed_given = false;

    auto* compile_cmd = app.add_subcommand("compile", "compile an expression into a machine document");
    compile_cmd->add_option("-e,--expr", expr, "pattern expression")->required();
    compile_cmd->add_option("--mode", mode, "exact or complete matching")
        ->check(CLI::IsMember({"exact", "complete"}));
    compile_cmd->add_flag("--no-minimize", no_minimize, "skip min_comp");
    compile_cmd->add_flag("--trim-sink", trim, "drop the no-output sink for display");
    compile_cmd->add_option("-o,--output", output, "output file, - for stdout");

    auto* run_cmd = app.add_subcommand("run", "stream input through a Mealy machine");
    run_cmd->add_option("-m,--machine", model, "machine document")->required();
    run_cmd->add_option("input", input, "input file, - for stdin");
    run_cmd->add_flag("--keep-newlines", keep_newlines, "treat newline bytes as symbols");

    auto* dot_cmd = app.add_subcommand("dot", "render a machine document as Graphviz");
    dot_cmd->add_option("-m,--machine", model, "machine document")->required();

    auto* check_cmd = app.add_subcommand("oracle-check", "compare the compiled machines against the oracles");
    check_cmd->add_option("-e,--expr", expr, "pattern expression")->required();
    check_cmd->add_option("--max-len", max_len, "exhaustive word length")->required();
    check_cmd->add_option("--words", words, "random longer words");
    check_cmd->add_option("--seed", seed, "random seed (default REMATCH_SEED or 1)")
        ->each([&](const std::string&) { seed_given = true; });

    auto* bench_cmd = app.add_subcommand("bench", "measure throughput over a pseudorandom stream");
    bench_cmd->add_option("-m,--machine", model, "machine document")->required();
    bench_cmd->add_option("--bytes", bytes, "number of symbols");
    bench_cmd->add_option("--seed", seed, "random seed (default REMATCH_SEED or 1)")
        ->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
        if (!seed_given) seed = default_seed();

        if (*compile_cmd) return cmd_compile(expr, mode, no_minimize, trim, output, out, err);
        if (*run_cmd) return cmd_run(model, input, keep_newlines, in, out);
        if (*dot_cmd) return cmd_dot(model, in, out);
        if (*check_cmd) return cmd_oracle_check(expr, max_len, words, seed, out);
        if (*bench_cmd) return cmd_bench(model, bytes, seed, in, out, err);
        return exit_code::usage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::file;
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::file;
    } catch (const DeterminismError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::file;
    } catch (const StuckError& e) {
        out.flush();
        err << "error: " << e.what() << '\n';
        return exit_code::stuck;
    } catch (const UnknownSymbolError& e) {
        out.flush();
        err << "error: " << e.what() << '\n';
        return exit_code::unknown_symbol;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

} // namespace rematch
