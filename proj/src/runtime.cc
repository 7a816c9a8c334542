#include "rematch/runtime.hh"

#include <array>
#include <istream>
#include <stdexcept>

#include "rematch/errors.hh"

namespace rematch {

std::string format_event(const MatchEvent& event) {
    std::string line = std::to_string(event.position);
    line += '\t';
    line += event.symbol;
    line += '\t';
    bool first = true;
    for (const auto& o : event.outputs) {
        if (!first) line += ',';
        line += o;
        first = false;
    }
    return line;
}

std::optional<MatchEvent> Session::step(InputSymbol c) {
    const LabelId label = advance(c);
    if (label == 0) return std::nullopt;
    return MatchEvent{position_, c, machine_->label(label)};
}

StreamSummary run_stream(const Mealy& machine, std::istream& in,
                         const std::function<void(const MatchEvent&)>& on_event, StreamOptions options) {
    Session session(machine);
    StreamSummary summary;
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            const char c = buffer[static_cast<std::size_t>(i)];
            if (options.skip_newlines && (c == '\n' || c == '\r')) continue;
            const LabelId label = session.advance(c);
            if (label != 0) {
                ++summary.events;
                on_event(MatchEvent{session.position(), c, machine.label(label)});
            }
        }
    }
    if (in.bad()) {
        throw std::runtime_error("read error after position " + std::to_string(session.position()));
    }
    summary.symbols = session.position();
    summary.lookups = session.lookup_count();
    return summary;
}

} // namespace rematch
