#include "gossip/classical.hpp"

#include "gossip/choice_tape.hpp"
#include "gossip/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace gossip {

Trace run_classical(const Graph& graph, const RunConfig& config) {
    validate(graph, config);
    const ChoiceTape tape(config.seed);
    const std::size_t n = graph.node_count();

    std::vector<bool> informed(n, false);
    std::vector<bool> informed_at_start(n, false);
    Trace trace;
    trace.informed_round.assign(n, kNeverInformed);
    informed[config.source] = true;
    trace.informed_round[config.source] = 0;
    std::size_t informed_count = 1;

    const bool push_side =
        config.protocol == Protocol::Push || config.protocol == Protocol::PushPull;
    const bool pull_side =
        config.protocol == Protocol::Pull || config.protocol == Protocol::PushPull;

    std::uint32_t round = 0;
    while (informed_count < n && round < config.max_rounds) {
        ++round;
        for (NodeId v = 0; v < n; ++v) {
            informed_at_start[v] = informed[v];
        }
        for (NodeId v = 0; v < n; ++v) {
            const std::size_t deg = graph.degree(v);
            if (informed_at_start[v]) {
                if (!push_side) {
                    continue;
                }
                const std::uint64_t port =
                    tape.uniform(v, round, ChoiceTape::Purpose::ContactChoice, deg);
                const NodeId w = graph.neighbor_at_port(v, static_cast<std::size_t>(port));
                ++trace.total_messages_sent;
                if (!informed[w]) {
                    informed[w] = true;
                    trace.informed_round[w] = round;
                    ++informed_count;
                }
            } else {
                if (!pull_side) {
                    continue;
                }
                const std::uint64_t port =
                    tape.uniform(v, round, ChoiceTape::Purpose::ContactChoice, deg);
                const NodeId w = graph.neighbor_at_port(v, static_cast<std::size_t>(port));
                ++trace.total_messages_sent;
                // Informedness is judged against the start-of-round set.
                if (informed_at_start[w] && !informed[v]) {
                    informed[v] = true;
                    trace.informed_round[v] = round;
                    ++informed_count;
                }
            }
        }
        RoundRecord rec;
        rec.round = round;
        rec.informed = static_cast<std::uint32_t>(informed_count);
        trace.rounds.push_back(rec);
    }

    if (informed_count == n) {
        trace.completion_round =
            *std::max_element(trace.informed_round.begin(), trace.informed_round.end());
    }
    return trace;
}

Trace simulate(const Graph& graph, const RunConfig& config) {
    if (config.model == Model::Classical) {
        return run_classical(graph, config);
    }
    return run(graph, config);
}

}  // namespace gossip
