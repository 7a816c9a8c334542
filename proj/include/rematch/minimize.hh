#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rematch/mealy.hh"

namespace rematch {

/// DFA over unified letters (input symbol, output label) of one Mealy
/// machine. Only letters that occur on some transition are materialized;
/// letters that never occur lead every state to the same rejecting sink and
/// cannot separate states.
struct DfaView {
    struct Letter {
        std::size_t input;
        LabelId label;
        auto operator<=>(const Letter&) const = default;
    };

    std::size_t state_count = 0;
    std::vector<Letter> letters;
    /// Dense `state_count x letters.size()` table, kNoState where undefined.
    std::vector<StateId> delta;
    StateId initial = 0;
    std::vector<bool> finals;

    StateId next(StateId s, std::size_t letter) const { return delta[s * letters.size() + letter]; }
    bool is_complete() const;
};

/// Disjoint cover of the states of a machine.
struct Partition {
    std::vector<std::vector<StateId>> blocks;
    std::vector<std::size_t> block_of;

    /// Blocks sorted internally and ordered by smallest member.
    Partition canonical() const;
    bool operator==(const Partition& other) const;
};

/// Adds an absorbing silent sink for every missing (state, symbol) pair.
/// Returns the machine unchanged if it is already complete.
Mealy complete_with_sink(const Mealy& m);

/// Each transition p --σ/λ--> q becomes p --(σ,λ)--> q; every state final.
/// Precondition: `m` complete.
DfaView to_dfa_view(const Mealy& m);

/// Adds a rejecting sink state and routes every missing letter to it.
/// Returns `a` unchanged if already complete.
DfaView complete_dfa(const DfaView& a);

/// Coarsest partition into language-equivalent states (Hopcroft, splitting
/// with the smaller half). Precondition: `a` complete.
Partition hopcroft_partition(const DfaView& a);

/// Minimal complete DFA for L(a), states renumbered breadth-first from the
/// initial block. Unreachable states are dropped. Precondition: `a`
/// complete.
DfaView minimize_dfa(const DfaView& a);

/// Unique minimal complete Mealy machine with the same outputting behaviour
/// as `m`: complete with a sink, translate to a DFA over unified letters,
/// complete with a rejecting sink, minimize, drop the rejecting block and
/// translate back. States are numbered breadth-first from the initial state.
Mealy min_comp(const Mealy& m);

enum class TrimStatus {
    Trimmed,
    /// Every state can still reach an output.
    NoSink,
    /// The initial state itself never leads to an output; nothing removed.
    InitialIsSink,
};

struct TrimResult {
    Mealy machine;
    TrimStatus status;
};

/// Display form of a complete machine: drops the silent transitions into
/// states from which no output is reachable, and the transitions leaving
/// them. Such a state survives only while some output-carrying transition
/// still enters it. Outputting behaviour is unchanged; the result is
/// partial.
TrimResult trim_sink(const Mealy& m);

/// True iff a bijection maps initial to initial and preserves every
/// (input, output set, target) entry.
bool is_isomorphic(const Mealy& lhs, const Mealy& rhs);

/// States in breadth-first order from the initial state (symbol order within
/// a state). Unreachable states are omitted.
std::vector<StateId> bfs_order(const Mealy& m);

} // namespace rematch
