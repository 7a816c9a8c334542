#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "rematch/fst.hh"
#include "rematch/symbols.hh"

namespace rematch {

/// Index into a machine's table of distinct output sets. Label 0 is always
/// the empty set.
using LabelId = std::uint32_t;

struct MealyEntry {
    StateId target = kNoState;
    LabelId label = 0;

    bool defined() const { return target != kNoState; }
};

/// Deterministic transducer whose transitions emit sets of output symbols.
///
/// The transition table is dense: `state_count() x input_alphabet().size()`
/// entries, undefined ones marked with kNoState. A step is one array lookup.
/// `provenance()` optionally records, for each state, the transducer states
/// it was built from; nothing at run time reads it.
class Mealy {
public:
    Mealy() = default;
    /// `inputs` is sorted and deduplicated; `outputs` seeds Γ.
    Mealy(std::vector<InputSymbol> inputs, std::set<OutputSymbol> outputs = {});

    StateId add_state();
    void set_initial(StateId s);
    /// Throws DeterminismError if (from, symbol) already has a transition.
    void set_transition(StateId from, std::size_t symbol, StateId to, const OutputSet& outputs);
    void set_transition(StateId from, InputSymbol c, StateId to, const OutputSet& outputs);
    /// Same, with an already interned label.
    void set_transition(StateId from, std::size_t symbol, StateId to, LabelId label);
    LabelId intern(const OutputSet& outputs);

    std::size_t state_count() const { return state_count_; }
    StateId initial() const { return initial_; }
    const std::vector<InputSymbol>& input_alphabet() const { return inputs_; }
    const std::set<OutputSymbol>& output_alphabet() const { return outputs_; }
    /// Position of `c` in the input alphabet, or -1.
    int symbol_index(InputSymbol c) const { return index_[static_cast<unsigned char>(c)]; }

    const MealyEntry& entry(StateId s, std::size_t symbol) const { return table_[s * inputs_.size() + symbol]; }
    const OutputSet& label(LabelId id) const { return labels_[id]; }
    std::size_t label_count() const { return labels_.size(); }

    std::size_t transition_count() const;
    /// True iff every (state, symbol) pair has a transition.
    bool is_complete() const;

    const std::optional<std::vector<StateSet>>& provenance() const { return provenance_; }
    void set_provenance(std::vector<StateSet> subsets);
    void clear_provenance() { provenance_.reset(); }

private:
    std::vector<InputSymbol> inputs_;
    std::array<int, 256> index_{};
    std::set<OutputSymbol> outputs_;
    std::vector<OutputSet> labels_{OutputSet{}};
    std::size_t state_count_ = 0;
    StateId initial_ = 0;
    std::vector<MealyEntry> table_;
    std::optional<std::vector<StateSet>> provenance_;
};

/// Exact-matching determinization: macrostates are ε-closed subsets of the
/// transducer, explored breadth-first from ε(I). Subsets with no move on a
/// symbol get no transition, so the result is usually partial.
/// Throws OutputBeforeInputError when ε(I) contains an output ε-move.
Mealy subset_t(const Fst& m);

/// Complete-matching determinization: like subset_t, but every successor
/// subset also contains ε(I), restarting the pattern at every position. The
/// result is complete over Σ.
Mealy subset_tc(const Fst& m);

/// Non-empty emissions of `m` for every word of length <= max_len. Walks
/// stop at undefined transitions.
BehaviourTable machine_output(const Mealy& m, std::size_t max_len);

/// The same machine viewed as a transducer: one transition per emitted
/// symbol (or a single silent one), initial state as the only initial, all
/// states final.
Fst to_fst(const Mealy& m);

} // namespace rematch
