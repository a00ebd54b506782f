#pragma once

#include "gossip/graph.hpp"
#include "gossip/protocol.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gossip {

// Which source nodes a plan sweeps. All realizes the worst-case-over-sources
// objective; Sample draws k distinct sources deterministically from the plan
// seed.
struct SourcePolicy {
    enum class Kind { All, Fixed, Sample };
    Kind kind = Kind::Fixed;
    NodeId fixed = 0;
    std::size_t sample_size = 0;

    static SourcePolicy all();
    static SourcePolicy fixed_node(NodeId id);
    static SourcePolicy sample(std::size_t k);
};

struct ExperimentPlan {
    std::vector<GraphSpec> graphs;
    Protocol protocol = Protocol::Push;
    Model model = Model::Buffered;
    std::uint32_t trials = 1;
    SourcePolicy sources;
    std::uint64_t base_seed = 0;
    TieBreak tie_break = TieBreak::UniformRandom;
    std::optional<std::size_t> buffer_capacity;
    std::uint32_t max_rounds = 100000;
};

struct TrialResult {
    std::size_t graph_index = 0;
    NodeId source = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> completion_round;
    std::uint64_t total_messages = 0;
    std::uint32_t max_buffer = 0;

    bool censored() const noexcept { return !completion_round.has_value(); }
};

// Statistics over the completed trials of one (graph, source) cell. Censored
// runs are never averaged in; they only show up in censored_fraction.
struct SourceSummary {
    NodeId source = 0;
    std::uint32_t trials = 0;
    std::uint32_t completed = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double ci95 = 0.0;  // normal-approximation half width
    std::uint32_t min = 0;
    std::uint32_t max = 0;
    double censored_fraction = 0.0;
};

struct GraphSummary {
    std::string graph_id;
    std::vector<SourceSummary> per_source;
    double worst_source_mean = 0.0;  // max over sources of mean completion
};

struct ExperimentResult {
    std::vector<std::string> graph_ids;
    std::vector<TrialResult> trials;
    std::vector<GraphSummary> summaries;
    std::uint64_t censored_runs = 0;
};

// Seed for trial (graph_index, source, trial): a fixed mixing chain over the
// base seed, so trials are independent without any shared generator state.
std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t graph_index, NodeId source,
                          std::uint32_t trial) noexcept;

// Runs every (graph, source, trial) cell. Trials run `jobs`-wide over the
// immutable graphs and results are merged by trial index, so the output is
// identical for every jobs value. Invalid specs abort before any run.
ExperimentResult run_experiment(const ExperimentPlan& plan, unsigned jobs = 1);

// Least-squares slope of ln(y) against ln(x). Needs two distinct positive x.
double scaling_fit(const std::vector<std::pair<double, double>>& points);

// Plan files are JSON mirroring ExperimentPlan field-for-field.
ExperimentPlan plan_from_json_text(const std::string& text);
std::string plan_to_json_text(const ExperimentPlan& plan);

// CSV columns:
//   results: graph_id,protocol,model,tie_break,source,trial,seed,
//            completion_round,censored,total_messages,max_buffer
//   summary: graph_id,protocol,model,source,trials,mean,std,min,max,ci95,
//            worst_source_mean
void write_results_csv(const ExperimentPlan& plan, const ExperimentResult& result,
                       std::ostream& out);
void write_summary_csv(const ExperimentPlan& plan, const ExperimentResult& result,
                       std::ostream& out);

}  // namespace gossip
