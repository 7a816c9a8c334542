#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "rematch/regexp.hh"
#include "rematch/symbols.hh"

namespace rematch {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Sorted, duplicate-free set of states.
using StateSet = std::vector<StateId>;

/// `from --input/output--> to`; a missing input is an ε-move, a missing
/// output means nothing is emitted.
struct FstTransition {
    StateId from = 0;
    std::optional<InputSymbol> input;
    std::optional<OutputSymbol> output;
    StateId to = 0;

    auto operator<=>(const FstTransition&) const = default;
};

/// Nondeterministic finite-state transducer (Q, Σ, Γ, I, F, δ).
///
/// Outgoing transitions of each state are kept ordered by input symbol with
/// ε-moves first, so ε-successors and σ-successors are contiguous ranges.
/// Final states are stored for completeness; the output semantics never
/// consults them.
class Fst {
public:
    StateId add_state();
    /// Adds the transition and extends the alphabets with its symbols.
    void add_transition(FstTransition t);
    void add_input_symbol(InputSymbol c) { inputs_.insert(c); }
    void add_output_symbol(const OutputSymbol& s) { outputs_.insert(s); }
    void add_initial(StateId s);
    void add_final(StateId s);

    std::size_t state_count() const { return out_.size(); }
    std::size_t transition_count() const;
    const std::set<InputSymbol>& input_alphabet() const { return inputs_; }
    const std::set<OutputSymbol>& output_alphabet() const { return outputs_; }
    const StateSet& initials() const { return initials_; }
    const StateSet& finals() const { return finals_; }

    std::span<const FstTransition> transitions_from(StateId s) const { return out_.at(s); }
    std::span<const FstTransition> epsilon_from(StateId s) const;
    std::span<const FstTransition> reading_from(StateId s, InputSymbol c) const;
    /// All transitions ordered by (from, input, output, to).
    std::vector<FstTransition> transitions() const;

private:
    std::vector<std::vector<FstTransition>> out_;
    std::set<InputSymbol> inputs_;
    std::set<OutputSymbol> outputs_;
    StateSet initials_;
    StateSet finals_;
};

/// Least superset of `seed` closed under ε-moves.
StateSet eps_closure(const Fst& m, std::span<const StateId> seed);

/// States reachable from `states` by one transition reading `c`.
StateSet move(const Fst& m, std::span<const StateId> states, InputSymbol c);

/// Outputs on ε-moves between states of `closed` (an ε-closed set).
OutputSet epsilon_outputs(const Fst& m, std::span<const StateId> closed);

/// Outputs emitted by transitions reading `c` from `states`.
OutputSet reading_outputs(const Fst& m, std::span<const StateId> states, InputSymbol c);

/// Behaviour of state `p` for every input word of length <= max_len,
/// restricted to non-empty output sets. An ε-move may be taken before each
/// symbol, and outputs on ε-moves after the last symbol count towards it.
BehaviourTable state_behaviour(const Fst& m, StateId p, std::size_t max_len);

/// Pointwise union of state_behaviour over the initial states.
BehaviourTable fst_output(const Fst& m, std::size_t max_len);

/// Transducer for a pattern regexp: one initial and one final state, one
/// σ/γ transition per atom, ε glue elsewhere.
///
/// Gadgets: an alternation made only of atoms forks by ε into one entry
/// state per atom and all atoms arrive at a shared join state; any other
/// alternation forks and joins through ε. `e*` and `e+` wrap the body in a
/// fresh entry/exit pair with a back edge, `e+` without the bypass.
///
/// An atom keeps its output only if the final state is ε-reachable from
/// its target, i.e. only if it can be the last letter of a word of L(e);
/// otherwise the annotation could never be observed and the edge is silent.
Fst thompson(const Expr& e);

} // namespace rematch
