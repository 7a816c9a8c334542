#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rematch/mealy.hh"
#include "rematch/runtime.hh"

namespace rematch::testing {

/// The running example: two patterns sharing the final `d`.
inline const std::string e3_text = "a(b|c)+d<alpha>|d((a*b+|b*)c)+d<beta>";
inline const std::string trace_s = "abdbcabcbcdcd";

/// Events of the complete-matching machine on trace_s.
inline const std::vector<MatchEvent> trace_events{
    {3, 'd', {"alpha"}},
    {11, 'd', {"alpha", "beta"}},
    {13, 'd', {"beta"}},
};

/// Macrostates visited by restart-everywhere determinization of the
/// trimmed exact machine along trace_s, initial state first, in the
/// reference numbering of that machine.
inline const std::vector<StateSet> trace_macrostates{
    {0}, {0, 1}, {0, 2}, {0, 3, 7}, {0, 5}, {0, 4}, {0, 1, 6},
    {0, 2, 5}, {0, 2, 4}, {0, 2, 5}, {0, 2, 4}, {0, 3, 7}, {0, 4}, {0, 3, 7},
};

/// Three states on one symbol, cycling p -> q -> r -> p, every transition
/// emitting `output` (or nothing).
Mealy cycle_machine(std::optional<OutputSymbol> output);

/// Provenance subsets of the states visited while reading `w`, starting
/// with the initial state.
std::vector<StateSet> visited_subsets(const Mealy& m, const Word& w);

/// A bijection f on 0..n-1 with f applied elementwise turning `ours` into
/// `reference`, found by backtracking; nullopt if none exists.
std::optional<std::vector<StateId>> renaming(const std::vector<StateSet>& ours, const std::vector<StateSet>& reference,
                                             std::size_t n);

} // namespace rematch::testing
