#include "fixtures.hh"

#include <algorithm>

namespace rematch::testing {

Mealy cycle_machine(std::optional<OutputSymbol> output) {
    std::set<OutputSymbol> gamma;
    OutputSet label;
    if (output) {
        gamma.insert(*output);
        label.insert(*output);
    }
    Mealy m({'a'}, gamma);
    for (int i = 0; i < 3; ++i) m.add_state();
    m.set_initial(0);
    m.set_transition(0, 'a', 1, label);
    m.set_transition(1, 'a', 2, label);
    m.set_transition(2, 'a', 0, label);
    return m;
}

std::vector<StateSet> visited_subsets(const Mealy& m, const Word& w) {
    const auto& prov = *m.provenance();
    Session session(m);
    std::vector<StateSet> out{prov[session.current()]};
    for (char c : w) {
        session.advance(c);
        out.push_back(prov[session.current()]);
    }
    return out;
}

namespace {

bool extend(const std::vector<StateSet>& ours, const std::vector<StateSet>& reference, std::vector<StateId>& f,
            std::vector<bool>& used, StateId next) {
    if (next == f.size()) {
        for (std::size_t i = 0; i < ours.size(); ++i) {
            StateSet mapped;
            for (StateId s : ours[i]) mapped.push_back(f[s]);
            std::sort(mapped.begin(), mapped.end());
            if (mapped != reference[i]) return false;
        }
        return true;
    }
    for (StateId target = 0; target < f.size(); ++target) {
        if (used[target]) continue;
        // Prune: a state may only go where every subset containing it maps
        // to a subset containing the target.
        bool ok = true;
        for (std::size_t i = 0; i < ours.size() && ok; ++i) {
            const bool here = std::binary_search(ours[i].begin(), ours[i].end(), next);
            const bool there = std::binary_search(reference[i].begin(), reference[i].end(), target);
            ok = here == there;
        }
        if (!ok) continue;
        f[next] = target;
        used[target] = true;
        if (extend(ours, reference, f, used, next + 1)) return true;
        used[target] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<StateId>> renaming(const std::vector<StateSet>& ours, const std::vector<StateSet>& reference,
                                             std::size_t n) {
    if (ours.size() != reference.size()) return std::nullopt;
    std::vector<StateId> f(n, 0);
    std::vector<bool> used(n, false);
    if (!extend(ours, reference, f, used, 0)) return std::nullopt;
    return f;
}

} // namespace rematch::testing
