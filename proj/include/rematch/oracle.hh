#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "rematch/regexp.hh"
#include "rematch/symbols.hh"

// Brute-force reference semantics computed directly on the expression tree.
// Nothing here builds an automaton; every compiled machine is checked
// against these functions.

namespace rematch {

using Language = std::set<UnifiedWord>;

/// All words of L(e) with at most `max_len` unified symbols.
Language enumerate_language(const Expr& e, std::size_t max_len);

/// Outputting behaviour of `e` for every input word of length <= max_len:
/// `w` maps to the outputs carried by the last letter of some word of L(e)
/// whose input projection is `w`. Only non-empty sets are stored.
BehaviourTable behaviour_of(const Expr& e, std::size_t max_len);

/// Reference for complete matching: entry k-1 holds the outputs of every
/// suffix of the first k symbols of `w` that ends a match of `e`.
/// Throws UnknownSymbolError if `w` uses a symbol outside Σ(e).
std::vector<OutputSet> complete_oracle(const Expr& e, const Word& w);

/// Outputs of `e` on exactly the word `w` (one entry of behaviour_of, without
/// enumerating the language). Symbols outside Σ(e) simply fail to match.
OutputSet match_outputs(const Expr& e, const Word& w);

} // namespace rematch
