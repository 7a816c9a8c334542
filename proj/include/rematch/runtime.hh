#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "rematch/errors.hh"
#include "rematch/mealy.hh"

namespace rematch {

/// Non-empty emission at a 1-based input position.
struct MatchEvent {
    std::uint64_t position = 0;
    InputSymbol symbol = '\0';
    OutputSet outputs;

    bool operator==(const MatchEvent&) const = default;
};

/// `<position>\t<symbol>\t<out1,out2,...>`, outputs in lexicographic order,
/// no trailing newline.
std::string format_event(const MatchEvent& event);

/// Streaming cursor over a machine. Holds a non-owning pointer, so the
/// machine must outlive the session; any number of sessions may share one
/// machine. Size is fixed regardless of how much input has been read.
class Session {
public:
    explicit Session(const Mealy& machine) : machine_(&machine), current_(machine.initial()) {}

    /// Reads one symbol with a single table lookup and returns the label it
    /// emitted. Throws UnknownSymbolError (state unchanged) or StuckError.
    LabelId advance(InputSymbol c) {
        const int k = machine_->symbol_index(c);
        if (k < 0) throw UnknownSymbolError(c, position_ + 1);
        const MealyEntry& e = machine_->entry(current_, static_cast<std::size_t>(k));
        ++lookups_;
        if (!e.defined()) throw StuckError(current_, c, position_ + 1);
        current_ = e.target;
        ++position_;
        return e.label;
    }

    /// advance() packaged as an event when the emission is non-empty.
    std::optional<MatchEvent> step(InputSymbol c);

    const Mealy& machine() const { return *machine_; }
    StateId current() const { return current_; }
    std::uint64_t position() const { return position_; }
    std::uint64_t lookup_count() const { return lookups_; }

private:
    const Mealy* machine_;
    StateId current_;
    std::uint64_t position_ = 0;
    std::uint64_t lookups_ = 0;
};

inline Session start(const Mealy& machine) { return Session(machine); }

struct StreamOptions {
    /// Drop '\n' and '\r' bytes instead of treating them as symbols.
    bool skip_newlines = true;
};

struct StreamSummary {
    std::uint64_t symbols = 0;
    std::uint64_t events = 0;
    std::uint64_t lookups = 0;
};

/// Feeds every byte of `in` through a fresh session, one byte per symbol,
/// calling `on_event` for each non-empty emission. Errors from the session
/// propagate; a failed read throws std::runtime_error naming the position.
StreamSummary run_stream(const Mealy& machine, std::istream& in,
                         const std::function<void(const MatchEvent&)>& on_event,
                         StreamOptions options = {});

} // namespace rematch
