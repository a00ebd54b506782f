#pragma once

#include "gossip/graph.hpp"
#include "gossip/protocol.hpp"
#include "gossip/trace.hpp"

#include <optional>
#include <string>

namespace gossip {

// Result of running the classical and buffered models on one shared tape and
// comparing the informed sets round by round.
struct CouplingReport {
    Protocol protocol = Protocol::Push;
    NodeId source = 0;
    std::uint64_t seed = 0;
    Trace classical_trace;
    Trace buffered_trace;
    // First round t at which the informed sets differ; absent when they agree
    // at every compared round.
    std::optional<std::uint32_t> first_divergence_round;
    bool informed_sets_equal_every_round = false;
    bool completion_rounds_equal = false;
};

// Executes both models on the same (graph, source, seed) tape. For Push the
// informed sets must match exactly in every round; for Pull the comparison is
// best-effort (request draws share tape indices) and typically diverges on
// graphs where buffering bites.
CouplingReport run_coupled(const Graph& graph, NodeId source, Protocol protocol,
                           std::uint64_t seed, std::uint32_t max_rounds = 100000,
                           TieBreak tie_break = TieBreak::UniformRandom);

// JSON rendering with both traces embedded.
std::string to_json_string(const CouplingReport& report, bool include_traces = true);

}  // namespace gossip
