#include "rematch/document.hh"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "rematch/errors.hh"

namespace rematch {

using json = nlohmann::ordered_json;

namespace {

std::string symbol_string(InputSymbol c) { return std::string(1, c); }

json sorted_strings(const std::set<std::string>& set) {
    json arr = json::array();
    for (const auto& s : set) arr.push_back(s);
    return arr;
}

json input_array(const std::vector<InputSymbol>& sigma) {
    json arr = json::array();
    for (InputSymbol c : sigma) arr.push_back(symbol_string(c));
    return arr;
}

std::string render(const std::vector<std::pair<std::string, json>>& fields, const std::vector<json>& transitions) {
    std::ostringstream out;
    out << "{\n";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& [key, value] = fields[i];
        out << "  " << json(key).dump() << ": ";
        if (key == "transitions") {
            if (transitions.empty()) {
                out << "[]";
            } else {
                out << "[\n";
                for (std::size_t t = 0; t < transitions.size(); ++t) {
                    out << "    " << transitions[t].dump() << (t + 1 < transitions.size() ? ",\n" : "\n");
                }
                out << "  ]";
            }
        } else {
            out << value.dump();
        }
        out << (i + 1 < fields.size() ? ",\n" : "\n");
    }
    out << "}\n";
    return out.str();
}

json provenance_json(const std::vector<StateSet>& subsets) {
    json arr = json::array();
    for (const auto& set : subsets) arr.push_back(set);
    return arr;
}

// --- validation helpers -----------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw DocumentError(path + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

std::uint64_t unsigned_value(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

StateId state_value(const json& v, std::uint64_t states, const std::string& path) {
    auto id = unsigned_value(v, path);
    if (id >= states) fail(path, "state " + std::to_string(id) + " out of range");
    return static_cast<StateId>(id);
}

InputSymbol char_value(const json& v, const std::string& path) {
    if (!v.is_string() || v.get<std::string>().size() != 1) fail(path, "expected a one-character string");
    return v.get<std::string>()[0];
}

std::vector<InputSymbol> read_inputs(const json& doc) {
    const json& arr = field(doc, "input_alphabet", "$");
    if (!arr.is_array()) fail("$.input_alphabet", "expected an array");
    std::vector<InputSymbol> sigma;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "$.input_alphabet[" + std::to_string(i) + "]";
        InputSymbol c = char_value(arr[i], path);
        if (std::find(sigma.begin(), sigma.end(), c) != sigma.end()) fail(path, "duplicate symbol");
        sigma.push_back(c);
    }
    return sigma;
}

std::set<OutputSymbol> read_outputs(const json& doc) {
    const json& arr = field(doc, "output_alphabet", "$");
    if (!arr.is_array()) fail("$.output_alphabet", "expected an array");
    std::set<OutputSymbol> gamma;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "$.output_alphabet[" + std::to_string(i) + "]";
        if (!arr[i].is_string() || !is_identifier(arr[i].get<std::string>())) fail(path, "expected an identifier");
        if (!gamma.insert(arr[i].get<std::string>()).second) fail(path, "duplicate symbol");
    }
    return gamma;
}

OutputSet read_output_list(const json& v, const std::set<OutputSymbol>& gamma, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    OutputSet set;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_string()) fail(item, "expected a string");
        const auto& name = v[i].get_ref<const std::string&>();
        if (!gamma.contains(name)) fail(item, "'" + name + "' not in output_alphabet");
        if (!set.insert(name).second) fail(item, "duplicate output");
    }
    return set;
}

std::optional<std::vector<StateSet>> read_provenance(const json& doc, std::uint64_t states) {
    auto it = doc.find("provenance");
    if (it == doc.end()) return std::nullopt;
    if (!it->is_array() || it->size() != states) fail("$.provenance", "expected one array per state");
    std::vector<StateSet> subsets;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string path = "$.provenance[" + std::to_string(i) + "]";
        if (!(*it)[i].is_array()) fail(path, "expected an array");
        StateSet set;
        for (std::size_t j = 0; j < (*it)[i].size(); ++j) {
            set.push_back(static_cast<StateId>(unsigned_value((*it)[i][j], path + "[" + std::to_string(j) + "]")));
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        subsets.push_back(std::move(set));
    }
    return subsets;
}

Mealy read_mealy(const json& doc) {
    const auto sigma = read_inputs(doc);
    const auto gamma = read_outputs(doc);
    const std::uint64_t states = unsigned_value(field(doc, "states", "$"), "$.states");
    if (states == 0) fail("$.states", "a Mealy machine needs at least one state");
    Mealy m(sigma, gamma);
    for (std::uint64_t s = 0; s < states; ++s) m.add_state();
    m.set_initial(state_value(field(doc, "initial", "$"), states, "$.initial"));

    const json& transitions = field(doc, "transitions", "$");
    if (!transitions.is_array()) fail("$.transitions", "expected an array");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string path = "$.transitions[" + std::to_string(i) + "]";
        const json& t = transitions[i];
        if (!t.is_object()) fail(path, "expected an object");
        const StateId from = state_value(field(t, "from", path), states, path + ".from");
        const InputSymbol c = char_value(field(t, "input", path), path + ".input");
        const int k = m.symbol_index(c);
        if (k < 0) fail(path + ".input", "'" + symbol_string(c) + "' not in input_alphabet");
        const OutputSet outs = read_output_list(field(t, "outputs", path), gamma, path + ".outputs");
        const StateId to = state_value(field(t, "to", path), states, path + ".to");
        if (m.entry(from, static_cast<std::size_t>(k)).defined()) {
            throw DeterminismError(path + ": second transition from state " + std::to_string(from) + " on '" +
                                   symbol_string(c) + "'");
        }
        m.set_transition(from, static_cast<std::size_t>(k), to, outs);
    }
    const json& complete = field(doc, "complete", "$");
    if (!complete.is_boolean()) fail("$.complete", "expected a boolean");
    if (complete.get<bool>() != m.is_complete()) fail("$.complete", "flag does not match the transition table");
    if (auto prov = read_provenance(doc, states)) m.set_provenance(std::move(*prov));
    return m;
}

Fst read_fst(const json& doc) {
    const auto sigma = read_inputs(doc);
    const auto gamma = read_outputs(doc);
    const std::uint64_t states = unsigned_value(field(doc, "states", "$"), "$.states");
    Fst m;
    for (std::uint64_t s = 0; s < states; ++s) m.add_state();
    for (InputSymbol c : sigma) m.add_input_symbol(c);
    for (const auto& o : gamma) m.add_output_symbol(o);

    auto read_state_list = [&](const std::string& key) {
        const json& arr = field(doc, key, "$");
        if (!arr.is_array()) fail("$." + key, "expected an array");
        StateSet out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out.push_back(state_value(arr[i], states, "$." + key + "[" + std::to_string(i) + "]"));
        }
        return out;
    };
    const StateSet initials = read_state_list("initial");
    if (initials.empty()) fail("$.initial", "a transducer needs at least one initial state");
    for (StateId s : initials) m.add_initial(s);
    for (StateId s : read_state_list("finals")) m.add_final(s);

    const json& transitions = field(doc, "transitions", "$");
    if (!transitions.is_array()) fail("$.transitions", "expected an array");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string path = "$.transitions[" + std::to_string(i) + "]";
        const json& t = transitions[i];
        if (!t.is_object()) fail(path, "expected an object");
        FstTransition tr;
        tr.from = state_value(field(t, "from", path), states, path + ".from");
        const json& input = field(t, "input", path);
        if (input.is_string() && input.get<std::string>() == "eps") {
            tr.input = std::nullopt;
        } else {
            tr.input = char_value(input, path + ".input");
            if (std::find(sigma.begin(), sigma.end(), *tr.input) == sigma.end())
                fail(path + ".input", "'" + symbol_string(*tr.input) + "' not in input_alphabet");
        }
        const OutputSet outs = read_output_list(field(t, "outputs", path), gamma, path + ".outputs");
        if (outs.size() > 1) fail(path + ".outputs", "a transducer transition emits at most one symbol");
        if (!outs.empty()) tr.output = *outs.begin();
        tr.to = state_value(field(t, "to", path), states, path + ".to");
        m.add_transition(std::move(tr));
    }
    return m;
}

} // namespace

std::string save(const Mealy& m) {
    std::vector<json> transitions;
    const auto& sigma = m.input_alphabet();
    for (StateId s = 0; s < m.state_count(); ++s) {
        for (std::size_t k = 0; k < sigma.size(); ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            json t;
            t["from"] = s;
            t["input"] = symbol_string(sigma[k]);
            t["outputs"] = sorted_strings(m.label(e.label));
            t["to"] = e.target;
            transitions.push_back(std::move(t));
        }
    }
    std::vector<std::pair<std::string, json>> fields{
        {"format_version", kFormatVersion},
        {"kind", "mealy"},
        {"input_alphabet", input_array(sigma)},
        {"output_alphabet", sorted_strings(m.output_alphabet())},
        {"initial", m.initial()},
        {"states", m.state_count()},
        {"transitions", nullptr},
        {"complete", m.is_complete()},
    };
    if (m.provenance()) fields.emplace_back("provenance", provenance_json(*m.provenance()));
    return render(fields, transitions);
}

std::string save(const Fst& m) {
    auto all = m.transitions();
    std::sort(all.begin(), all.end(), [](const FstTransition& a, const FstTransition& b) {
        return std::tie(a.from, a.input, a.to, a.output) < std::tie(b.from, b.input, b.to, b.output);
    });
    std::vector<json> transitions;
    for (const auto& tr : all) {
        json t;
        t["from"] = tr.from;
        t["input"] = tr.input ? symbol_string(*tr.input) : std::string("eps");
        t["outputs"] = tr.output ? json::array({*tr.output}) : json::array();
        t["to"] = tr.to;
        transitions.push_back(std::move(t));
    }
    const std::vector<InputSymbol> sigma(m.input_alphabet().begin(), m.input_alphabet().end());
    std::vector<std::pair<std::string, json>> fields{
        {"format_version", kFormatVersion},
        {"kind", "fst"},
        {"input_alphabet", input_array(sigma)},
        {"output_alphabet", sorted_strings(m.output_alphabet())},
        {"initial", m.initials()},
        {"finals", m.finals()},
        {"states", m.state_count()},
        {"transitions", nullptr},
    };
    return render(fields, transitions);
}

std::string save(const Machine& m) {
    return std::visit([](const auto& machine) { return save(machine); }, m);
}

Machine load(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        fail("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("$", "expected an object");
    const json& version = field(doc, "format_version", "$");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
        fail("$.format_version", "unsupported version");
    const json& kind = field(doc, "kind", "$");
    if (kind == "mealy") return read_mealy(doc);
    if (kind == "fst") return read_fst(doc);
    fail("$.kind", "expected \"fst\" or \"mealy\"");
}

Mealy load_mealy(std::string_view bytes) {
    Machine m = load(bytes);
    if (auto* mealy = std::get_if<Mealy>(&m)) return std::move(*mealy);
    fail("$.kind", "expected a Mealy machine document");
}

} // namespace rematch
