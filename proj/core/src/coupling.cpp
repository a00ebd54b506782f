#include "gossip/coupling.hpp"

#include "gossip/classical.hpp"
#include "gossip/engine.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace gossip {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json trace_json(const Trace& trace) {
    ordered_json rounds = ordered_json::array();
    for (const RoundRecord& rec : trace.rounds) {
        ordered_json r;
        r["round"] = rec.round;
        r["informed"] = rec.informed;
        r["nearly_informed"] = rec.nearly_informed;
        r["buffered"] = rec.buffered;
        r["max_buffer"] = rec.max_buffer;
        rounds.push_back(std::move(r));
    }
    ordered_json informed = ordered_json::array();
    for (const std::uint32_t r : trace.informed_round) {
        if (r == kNeverInformed) {
            informed.push_back(nullptr);
        } else {
            informed.push_back(r);
        }
    }
    ordered_json out;
    out["rounds"] = std::move(rounds);
    out["informed_round"] = std::move(informed);
    if (trace.completion_round) {
        out["completion_round"] = *trace.completion_round;
    } else {
        out["completion_round"] = nullptr;
    }
    out["total_messages"] = trace.total_messages_sent;
    return out;
}

}  // namespace

CouplingReport run_coupled(const Graph& graph, NodeId source, Protocol protocol,
                           std::uint64_t seed, std::uint32_t max_rounds, TieBreak tie_break) {
    RunConfig config;
    config.protocol = protocol;
    config.source = source;
    config.seed = seed;
    config.tie_break = tie_break;
    config.max_rounds = max_rounds;

    CouplingReport report;
    report.protocol = protocol;
    report.source = source;
    report.seed = seed;

    config.model = Model::Classical;
    report.classical_trace = run_classical(graph, config);
    config.model = Model::Buffered;
    report.buffered_trace = run(graph, config);

    // The informed set at round t is {v : informed_round[v] <= t}, so the
    // earliest disagreement over any node is the first divergence round.
    // A node missing from both runs (censored on both sides) never differs
    // within the compared horizon.
    std::optional<std::uint32_t> divergence;
    const auto& classical = report.classical_trace.informed_round;
    const auto& buffered = report.buffered_trace.informed_round;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (classical[v] == buffered[v]) {
            continue;
        }
        const std::uint32_t t = std::min(classical[v], buffered[v]);
        if (t <= max_rounds && (!divergence || t < *divergence)) {
            divergence = t;
        }
    }
    report.first_divergence_round = divergence;
    report.informed_sets_equal_every_round = !divergence.has_value();
    report.completion_rounds_equal =
        report.classical_trace.completion_round == report.buffered_trace.completion_round;
    return report;
}

std::string to_json_string(const CouplingReport& report, bool include_traces) {
    ordered_json out;
    out["protocol"] = to_string(report.protocol);
    out["source"] = report.source;
    out["seed"] = report.seed;
    out["informed_sets_equal_every_round"] = report.informed_sets_equal_every_round;
    if (report.first_divergence_round) {
        out["first_divergence_round"] = *report.first_divergence_round;
    } else {
        out["first_divergence_round"] = nullptr;
    }
    out["completion_rounds_equal"] = report.completion_rounds_equal;
    if (report.classical_trace.completion_round) {
        out["completion_round_classical"] = *report.classical_trace.completion_round;
    } else {
        out["completion_round_classical"] = nullptr;
    }
    if (report.buffered_trace.completion_round) {
        out["completion_round_buffered"] = *report.buffered_trace.completion_round;
    } else {
        out["completion_round_buffered"] = nullptr;
    }
    if (include_traces) {
        out["trace_classical"] = trace_json(report.classical_trace);
        out["trace_buffered"] = trace_json(report.buffered_trace);
    }
    return out.dump();
}

}  // namespace gossip
