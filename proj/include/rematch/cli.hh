#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rematch/mealy.hh"
#include "rematch/regexp.hh"

namespace rematch {

enum class MatchMode { Exact, Complete };

struct CompileOptions {
    MatchMode mode = MatchMode::Exact;
    bool minimize = true;
    bool trim = false;
};

struct CompileResult {
    Mealy machine;
    /// (stage name, state count) in pipeline order.
    std::vector<std::pair<std::string, std::size_t>> stages;
};

/// parse → thompson → subset_t / subset_tc → [min_comp] → [trim_sink].
CompileResult compile(const Expr& e, const CompileOptions& options);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int mismatch = 1;
inline constexpr int stuck = 2;
inline constexpr int unknown_symbol = 3;
inline constexpr int usage = 64;
inline constexpr int file = 66;
inline constexpr int internal = 70;
} // namespace exit_code

/// Entry point of the `rematch` tool. Streams are injected so the whole
/// command surface can be driven in-process.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace rematch
