#include <algorithm>
#include <iterator>
#include <unordered_map>

#include "rematch/errors.hh"
#include "rematch/mealy.hh"

namespace rematch {

namespace {

struct StateSetHash {
    std::size_t operator()(const StateSet& set) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (StateId s : set) {
            h ^= s;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

// Shared worklist for both constructions. Subsets are numbered in the order
// they are discovered; processing them in that order is a FIFO traversal,
// so state ids follow breadth-first order from ε(I).
Mealy determinize(const Fst& m, bool restart_everywhere) {
    if (m.initials().empty()) throw std::invalid_argument("transducer has no initial state");
    const StateSet start = eps_closure(m, m.initials());
    if (auto early = epsilon_outputs(m, start); !early.empty()) {
        throw OutputBeforeInputError("transducer emits " + format_output_set(early) +
                                     " before reading any input");
    }

    const std::vector<InputSymbol> sigma(m.input_alphabet().begin(), m.input_alphabet().end());
    Mealy out(sigma, m.output_alphabet());
    std::vector<StateSet> subsets;
    std::unordered_map<StateSet, StateId, StateSetHash> ids;

    auto id_of = [&](StateSet set) -> StateId {
        if (auto it = ids.find(set); it != ids.end()) return it->second;
        StateId id = out.add_state();
        ids.emplace(set, id);
        subsets.push_back(std::move(set));
        return id;
    };

    out.set_initial(id_of(start));
    for (StateId s = 0; s < subsets.size(); ++s) {
        const StateSet current = subsets[s];
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const StateSet moved = move(m, current, sigma[k]);
            if (moved.empty() && !restart_everywhere) continue;
            StateSet target = eps_closure(m, moved);
            if (restart_everywhere) {
                StateSet with_start;
                std::set_union(target.begin(), target.end(), start.begin(), start.end(),
                               std::back_inserter(with_start));
                target = std::move(with_start);
            }
            OutputSet emitted = reading_outputs(m, current, sigma[k]);
            emitted.merge(epsilon_outputs(m, target));
            out.set_transition(s, k, id_of(std::move(target)), emitted);
        }
    }
    out.set_provenance(std::move(subsets));
    return out;
}

} // namespace

Mealy subset_t(const Fst& m) { return determinize(m, false); }

Mealy subset_tc(const Fst& m) { return determinize(m, true); }

} // namespace rematch
