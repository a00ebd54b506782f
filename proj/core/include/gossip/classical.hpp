#pragma once

#include "gossip/graph.hpp"
#include "gossip/protocol.hpp"
#include "gossip/trace.hpp"

namespace gossip {

// Bufferless oracle model: all contacts arriving at a node within one round
// are processed in that round. Push informs every contacted uninformed node
// the same round; Pull informs a node iff the neighbor it contacted was
// informed at the start of the round (no intra-round chaining). Contact
// choices read the same (node, round) tape index as the buffered engine, so
// the two models can be coupled on one seed.
//
// Trace fields nearly_informed, buffered and max_buffer are always zero here;
// total_messages_sent counts contacts (pushed rumors and pull requests).
Trace run_classical(const Graph& graph, const RunConfig& config);

// Dispatch on config.model.
Trace simulate(const Graph& graph, const RunConfig& config);

}  // namespace gossip
