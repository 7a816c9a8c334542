#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rematch {

/// Malformed pattern text. `offset()` is the 0-based byte offset of the
/// offending token in the original input.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A symbol outside the input alphabet of a machine or expression.
class UnknownSymbolError : public std::runtime_error {
public:
    UnknownSymbolError(char symbol, std::uint64_t position);
    char symbol() const noexcept { return symbol_; }
    /// 1-based position in the stream, 0 when not applicable.
    std::uint64_t position() const noexcept { return position_; }

private:
    char symbol_;
    std::uint64_t position_;
};

/// Raised by determinization when the transducer emits output before any
/// input has been read; no deterministic equivalent exists in that case.
class OutputBeforeInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A partial machine has no transition for the symbol just read.
class StuckError : public std::runtime_error {
public:
    StuckError(std::uint32_t state, char symbol, std::uint64_t position);
    std::uint32_t state() const noexcept { return state_; }
    char symbol() const noexcept { return symbol_; }
    std::uint64_t position() const noexcept { return position_; }

private:
    std::uint32_t state_;
    char symbol_;
    std::uint64_t position_;
};

/// Two transitions share a (state, input) key in a deterministic machine.
class DeterminismError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Machine document failed schema validation. The message carries a JSON
/// path such as `$.transitions[3].to`.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rematch
