#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rematch {

/// One input character. Patterns use single printable characters.
using InputSymbol = char;
/// Named output symbol, e.g. `alpha` in `d<alpha>`.
using OutputSymbol = std::string;
/// Set of outputs emitted by one step; the empty set means "no output".
using OutputSet = std::set<OutputSymbol>;
/// Word over the input alphabet.
using Word = std::string;

/// Input symbol paired with an optional output, the letters of a pattern
/// regexp.
struct UnifiedSymbol {
    InputSymbol input = '\0';
    std::optional<OutputSymbol> output;

    auto operator<=>(const UnifiedSymbol&) const = default;
};

using UnifiedWord = std::vector<UnifiedSymbol>;

/// Projection of a unified word onto its input symbols.
Word input_part(const UnifiedWord& word);

bool is_identifier(const std::string& name);

/// Finite table of word -> emitted output set, restricted to non-empty sets.
/// `horizon` records the longest word length the table covers.
struct BehaviourTable {
    std::size_t horizon = 0;
    std::map<Word, OutputSet> entries;

    void add(const Word& word, const OutputSymbol& symbol) { entries[word].insert(symbol); }
    void add(const Word& word, const OutputSet& symbols);
    /// Pointwise union; horizons must match.
    void merge(const BehaviourTable& other);
    const OutputSet* find(const Word& word) const;
    bool empty() const { return entries.empty(); }

    bool operator==(const BehaviourTable&) const = default;
};

std::string format_output_set(const OutputSet& set);

/// First word on which the tables disagree, if any.
std::optional<Word> first_difference(const BehaviourTable& lhs, const BehaviourTable& rhs);

} // namespace rematch
