#pragma once

#include "gossip/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

namespace gossip {

// End-of-round snapshot. `nearly_informed` counts uninformed nodes that have
// the rumor sitting unread in their buffer.
struct RoundRecord {
    std::uint32_t round = 0;
    std::uint32_t informed = 0;
    std::uint32_t nearly_informed = 0;
    std::uint64_t buffered = 0;
    std::uint32_t max_buffer = 0;
};

// Sentinel for a node that never became informed within max_rounds.
inline constexpr std::uint32_t kNeverInformed = std::numeric_limits<std::uint32_t>::max();

struct Trace {
    std::vector<RoundRecord> rounds;
    // Round at which each node became informed; 0 for the source,
    // kNeverInformed if the run was cut off first.
    std::vector<std::uint32_t> informed_round;
    // First round t at which every node is informed (0 if the source is the
    // whole graph); absent if max_rounds was reached first.
    std::optional<std::uint32_t> completion_round;
    std::uint64_t total_messages_sent = 0;
    std::uint64_t total_reads = 0;
    std::uint64_t total_dropped = 0;
    // Messages still sitting in buffers when the run stopped.
    std::uint64_t final_buffered = 0;

    bool censored() const noexcept { return !completion_round.has_value(); }
    std::uint32_t max_buffer_overall() const noexcept;
};

// JSON-lines export: one record per round with keys
//   round, informed, nearly_informed, buffered, max_buffer
// then a final summary record with keys completion_round (null when the run
// was censored) and total_messages. Field order is fixed so identical traces
// serialize to identical bytes.
void write_trace_jsonl(const Trace& trace, std::ostream& out);
std::string trace_to_jsonl(const Trace& trace);

}  // namespace gossip
