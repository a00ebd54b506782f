#include "gossip/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace gossip {

std::uint32_t Trace::max_buffer_overall() const noexcept {
    std::uint32_t out = 0;
    for (const RoundRecord& rec : rounds) {
        out = std::max(out, rec.max_buffer);
    }
    return out;
}

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
    for (const RoundRecord& rec : trace.rounds) {
        out << "{\"round\":" << rec.round << ",\"informed\":" << rec.informed
            << ",\"nearly_informed\":" << rec.nearly_informed << ",\"buffered\":" << rec.buffered
            << ",\"max_buffer\":" << rec.max_buffer << "}\n";
    }
    out << "{\"completion_round\":";
    if (trace.completion_round) {
        out << *trace.completion_round;
    } else {
        out << "null";
    }
    out << ",\"total_messages\":" << trace.total_messages_sent << "}\n";
}

std::string trace_to_jsonl(const Trace& trace) {
    std::ostringstream out;
    write_trace_jsonl(trace, out);
    return out.str();
}

}  // namespace gossip
