#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rematch/fst.hh"
#include "rematch/mealy.hh"

namespace rematch {

inline constexpr int kFormatVersion = 1;

using Machine = std::variant<Fst, Mealy>;

/// Canonical JSON machine document. Keys appear in a fixed order, one
/// transition per line, transitions sorted by (from, input, to); equal
/// machines always produce equal bytes.
///
///     {
///       "format_version": 1,
///       "kind": "mealy",
///       "input_alphabet": ["a","b"],
///       "output_alphabet": ["A"],
///       "initial": 0,
///       "states": 2,
///       "transitions": [
///         {"from":0,"input":"a","outputs":["A"],"to":1}
///       ],
///       "complete": false
///     }
///
/// Transducer documents use kind "fst", a list of initial states, an extra
/// "finals" list, input "eps" for ε-moves and at most one output per
/// transition. "provenance" is written when the machine carries it.
std::string save(const Mealy& m);
std::string save(const Fst& m);
std::string save(const Machine& m);

/// Parses and revalidates a document. Throws DocumentError (message starts
/// with the JSON path of the problem) or DeterminismError for a Mealy
/// document with two transitions on one (state, input) key.
Machine load(std::string_view bytes);
Mealy load_mealy(std::string_view bytes);

/// Graphviz rendering. Mealy edges read `σ/{γ,...}` or `σ`; transducer
/// edges read `σ/γ`, `σ`, `ε/γ` or `ε`. Output is deterministic.
std::string to_dot(const Mealy& m);
std::string to_dot(const Fst& m);
std::string to_dot(const Machine& m);

} // namespace rematch
