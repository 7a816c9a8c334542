#include "rematch/fst.hh"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rematch {

namespace {

// Ordering of the per-state transition list: ε-moves sort first.
bool input_less(const std::optional<InputSymbol>& a, const std::optional<InputSymbol>& b) {
    return a < b;
}

void insert_sorted(StateSet& set, StateId s) {
    auto it = std::lower_bound(set.begin(), set.end(), s);
    if (it == set.end() || *it != s) set.insert(it, s);
}

} // namespace

StateId Fst::add_state() {
    out_.emplace_back();
    return static_cast<StateId>(out_.size() - 1);
}

void Fst::add_transition(FstTransition t) {
    if (t.from >= out_.size() || t.to >= out_.size()) throw std::out_of_range("transition references unknown state");
    if (t.input) inputs_.insert(*t.input);
    if (t.output) outputs_.insert(*t.output);
    auto& list = out_[t.from];
    auto it = std::upper_bound(list.begin(), list.end(), t,
                               [](const FstTransition& a, const FstTransition& b) { return input_less(a.input, b.input); });
    list.insert(it, std::move(t));
}

void Fst::add_initial(StateId s) {
    if (s >= out_.size()) throw std::out_of_range("initial state out of range");
    insert_sorted(initials_, s);
}

void Fst::add_final(StateId s) {
    if (s >= out_.size()) throw std::out_of_range("final state out of range");
    insert_sorted(finals_, s);
}

std::size_t Fst::transition_count() const {
    std::size_t n = 0;
    for (const auto& list : out_) n += list.size();
    return n;
}

std::span<const FstTransition> Fst::epsilon_from(StateId s) const {
    const auto& list = out_.at(s);
    auto end = std::find_if(list.begin(), list.end(), [](const FstTransition& t) { return t.input.has_value(); });
    return {list.data(), static_cast<std::size_t>(end - list.begin())};
}

std::span<const FstTransition> Fst::reading_from(StateId s, InputSymbol c) const {
    const auto& list = out_.at(s);
    FstTransition probe;
    probe.input = c;
    auto cmp = [](const FstTransition& a, const FstTransition& b) { return input_less(a.input, b.input); };
    auto [lo, hi] = std::equal_range(list.begin(), list.end(), probe, cmp);
    return {list.data() + (lo - list.begin()), static_cast<std::size_t>(hi - lo)};
}

std::vector<FstTransition> Fst::transitions() const {
    std::vector<FstTransition> all;
    for (const auto& list : out_) all.insert(all.end(), list.begin(), list.end());
    std::sort(all.begin(), all.end());
    return all;
}

StateSet eps_closure(const Fst& m, std::span<const StateId> seed) {
    std::vector<bool> seen(m.state_count(), false);
    std::vector<StateId> stack(seed.begin(), seed.end());
    StateSet result;
    for (StateId s : seed) {
        if (!seen[s]) {
            seen[s] = true;
            result.push_back(s);
        }
    }
    while (!stack.empty()) {
        StateId p = stack.back();
        stack.pop_back();
        for (const auto& t : m.epsilon_from(p)) {
            if (!seen[t.to]) {
                seen[t.to] = true;
                result.push_back(t.to);
                stack.push_back(t.to);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

StateSet move(const Fst& m, std::span<const StateId> states, InputSymbol c) {
    StateSet result;
    for (StateId p : states) {
        for (const auto& t : m.reading_from(p, c)) result.push_back(t.to);
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

OutputSet epsilon_outputs(const Fst& m, std::span<const StateId> closed) {
    OutputSet result;
    for (StateId p : closed) {
        for (const auto& t : m.epsilon_from(p)) {
            if (t.output) result.insert(*t.output);
        }
    }
    return result;
}

OutputSet reading_outputs(const Fst& m, std::span<const StateId> states, InputSymbol c) {
    OutputSet result;
    for (StateId p : states) {
        for (const auto& t : m.reading_from(p, c)) {
            if (t.output) result.insert(*t.output);
        }
    }
    return result;
}

namespace {

// Memoized per-state behaviour tables keyed by (state, remaining length).
class BehaviourExplorer {
public:
    explicit BehaviourExplorer(const Fst& m) : m_(m) {}

    // B(p)(ε): outputs on ε-moves inside ε(p).
    const OutputSet& empty_word_outputs(StateId p) {
        if (auto it = eps_out_.find(p); it != eps_out_.end()) return it->second;
        StateId seed[] = {p};
        return eps_out_.emplace(p, epsilon_outputs(m_, eps_closure(m_, seed))).first->second;
    }

    // Non-empty entries of B(p)(w) for 1 <= |w| <= len.
    const std::map<Word, OutputSet>& table(StateId p, std::size_t len) {
        auto key = std::make_pair(p, len);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::map<Word, OutputSet> result;
        if (len > 0) {
            StateId seed[] = {p};
            const StateSet closure = eps_closure(m_, seed);
            for (StateId q : closure) {
                for (const auto& t : m_.transitions_from(q)) {
                    if (!t.input) continue;
                    const Word head(1, *t.input);
                    // Last symbol read here: the transition's own output or
                    // anything emitted by ε-moves after arriving at t.to.
                    OutputSet here = empty_word_outputs(t.to);
                    if (t.output) here.insert(*t.output);
                    if (!here.empty()) result[head].insert(here.begin(), here.end());
                    for (const auto& [rest, outs] : table(t.to, len - 1)) {
                        result[head + rest].insert(outs.begin(), outs.end());
                    }
                }
            }
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

private:
    const Fst& m_;
    std::map<StateId, OutputSet> eps_out_;
    std::map<std::pair<StateId, std::size_t>, std::map<Word, OutputSet>> memo_;
};

} // namespace

BehaviourTable state_behaviour(const Fst& m, StateId p, std::size_t max_len) {
    BehaviourExplorer explorer(m);
    BehaviourTable table;
    table.horizon = max_len;
    table.add(Word{}, explorer.empty_word_outputs(p));
    for (const auto& [word, outs] : explorer.table(p, max_len)) table.add(word, outs);
    return table;
}

BehaviourTable fst_output(const Fst& m, std::size_t max_len) {
    BehaviourTable table;
    table.horizon = max_len;
    for (StateId i : m.initials()) table.merge(state_behaviour(m, i, max_len));
    return table;
}

} // namespace rematch
