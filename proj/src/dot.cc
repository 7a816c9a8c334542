#include <algorithm>
#include <sstream>

#include "rematch/document.hh"

namespace rematch {

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string symbol_string(InputSymbol c) { return std::string(1, c); }

} // namespace

std::string to_dot(const Mealy& m) {
    std::ostringstream out;
    out << "digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n  __start [shape=point];\n";
    for (StateId s = 0; s < m.state_count(); ++s) out << "  " << s << ";\n";
    if (m.state_count() > 0) out << "  __start -> " << m.initial() << ";\n";
    const auto& sigma = m.input_alphabet();
    for (StateId s = 0; s < m.state_count(); ++s) {
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            std::string label = symbol_string(sigma[k]);
            if (!m.label(e.label).empty()) label += "/" + format_output_set(m.label(e.label));
            out << "  " << s << " -> " << e.target << " [label=\"" << dot_escape(label) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const Fst& m) {
    std::ostringstream out;
    out << "digraph fst {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (StateId s = 0; s < m.state_count(); ++s) {
        out << "  " << s;
        if (std::binary_search(m.finals().begin(), m.finals().end(), s)) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (StateId i : m.initials()) {
        out << "  __start" << i << " [shape=point];\n  __start" << i << " -> " << i << ";\n";
    }
    auto all = m.transitions();
    for (const auto& t : all) {
        std::string label = t.input ? symbol_string(*t.input) : std::string("ε");
        if (t.output) label += "/" + *t.output;
        out << "  " << t.from << " -> " << t.to << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const Machine& m) {
    return std::visit([](const auto& machine) { return to_dot(machine); }, m);
}

} // namespace rematch
