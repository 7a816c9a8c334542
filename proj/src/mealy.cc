#include "rematch/mealy.hh"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rematch/errors.hh"

namespace rematch {

Mealy::Mealy(std::vector<InputSymbol> inputs, std::set<OutputSymbol> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    std::sort(inputs_.begin(), inputs_.end());
    inputs_.erase(std::unique(inputs_.begin(), inputs_.end()), inputs_.end());
    index_.fill(-1);
    for (std::size_t i = 0; i < inputs_.size(); ++i) index_[static_cast<unsigned char>(inputs_[i])] = static_cast<int>(i);
}

StateId Mealy::add_state() {
    table_.resize(table_.size() + inputs_.size());
    return static_cast<StateId>(state_count_++);
}

void Mealy::set_initial(StateId s) {
    if (s >= state_count_) throw std::out_of_range("initial state out of range");
    initial_ = s;
}

LabelId Mealy::intern(const OutputSet& outputs) {
    auto it = std::find(labels_.begin(), labels_.end(), outputs);
    if (it != labels_.end()) return static_cast<LabelId>(it - labels_.begin());
    outputs_.insert(outputs.begin(), outputs.end());
    labels_.push_back(outputs);
    return static_cast<LabelId>(labels_.size() - 1);
}

void Mealy::set_transition(StateId from, std::size_t symbol, StateId to, LabelId label) {
    if (from >= state_count_ || to >= state_count_) throw std::out_of_range("transition references unknown state");
    if (symbol >= inputs_.size()) throw std::out_of_range("transition symbol out of range");
    if (label >= labels_.size()) throw std::out_of_range("unknown output label");
    auto& slot = table_[from * inputs_.size() + symbol];
    if (slot.defined()) {
        throw DeterminismError("state " + std::to_string(from) + " already has a transition on '" +
                               std::string(1, inputs_[symbol]) + "'");
    }
    slot = MealyEntry{to, label};
}

void Mealy::set_transition(StateId from, std::size_t symbol, StateId to, const OutputSet& outputs) {
    set_transition(from, symbol, to, intern(outputs));
}

void Mealy::set_transition(StateId from, InputSymbol c, StateId to, const OutputSet& outputs) {
    int k = symbol_index(c);
    if (k < 0) throw UnknownSymbolError(c, 0);
    set_transition(from, static_cast<std::size_t>(k), to, outputs);
}

std::size_t Mealy::transition_count() const {
    return static_cast<std::size_t>(
        std::count_if(table_.begin(), table_.end(), [](const MealyEntry& e) { return e.defined(); }));
}

bool Mealy::is_complete() const {
    return std::all_of(table_.begin(), table_.end(), [](const MealyEntry& e) { return e.defined(); });
}

void Mealy::set_provenance(std::vector<StateSet> subsets) {
    if (subsets.size() != state_count_) throw std::invalid_argument("provenance size mismatch");
    provenance_ = std::move(subsets);
}

BehaviourTable machine_output(const Mealy& m, std::size_t max_len) {
    BehaviourTable table;
    table.horizon = max_len;
    if (m.state_count() == 0) return table;
    const auto& sigma = m.input_alphabet();
    Word word;
    // Depth-first walk over all words, pruned at undefined transitions.
    auto walk = [&](auto&& self, StateId s) -> void {
        if (word.size() == max_len) return;
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            word.push_back(sigma[k]);
            table.add(word, m.label(e.label));
            self(self, e.target);
            word.pop_back();
        }
    };
    walk(walk, m.initial());
    return table;
}

Fst to_fst(const Mealy& m) {
    Fst fst;
    for (std::size_t s = 0; s < m.state_count(); ++s) fst.add_state();
    for (InputSymbol c : m.input_alphabet()) fst.add_input_symbol(c);
    for (const auto& o : m.output_alphabet()) fst.add_output_symbol(o);
    const auto& sigma = m.input_alphabet();
    for (StateId s = 0; s < m.state_count(); ++s) {
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            const OutputSet& outs = m.label(e.label);
            if (outs.empty()) {
                fst.add_transition({s, sigma[k], std::nullopt, e.target});
            } else {
                for (const auto& o : outs) fst.add_transition({s, sigma[k], o, e.target});
            }
        }
        fst.add_final(s);
    }
    if (m.state_count() > 0) fst.add_initial(m.initial());
    return fst;
}

} // namespace rematch
