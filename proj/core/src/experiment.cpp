#include "gossip/experiment.hpp"

#include "gossip/choice_tape.hpp"
#include "gossip/classical.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace gossip {

SourcePolicy SourcePolicy::all() {
    SourcePolicy p;
    p.kind = Kind::All;
    return p;
}

SourcePolicy SourcePolicy::fixed_node(NodeId id) {
    SourcePolicy p;
    p.kind = Kind::Fixed;
    p.fixed = id;
    return p;
}

SourcePolicy SourcePolicy::sample(std::size_t k) {
    SourcePolicy p;
    p.kind = Kind::Sample;
    p.sample_size = k;
    return p;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t graph_index, NodeId source,
                          std::uint32_t trial) noexcept {
    std::uint64_t key = mix64(base_seed);
    key = mix64(key ^ static_cast<std::uint64_t>(graph_index));
    key = mix64(key ^ static_cast<std::uint64_t>(source));
    key = mix64(key ^ static_cast<std::uint64_t>(trial));
    return key;
}

namespace {

std::vector<NodeId> sources_for(const SourcePolicy& policy, const Graph& g,
                                std::uint64_t base_seed, std::size_t graph_index) {
    const std::size_t n = g.node_count();
    switch (policy.kind) {
        case SourcePolicy::Kind::All: {
            std::vector<NodeId> out(n);
            std::iota(out.begin(), out.end(), NodeId{0});
            return out;
        }
        case SourcePolicy::Kind::Fixed:
            if (policy.fixed >= n) {
                throw std::invalid_argument("plan: fixed source out of range for graph " +
                                            std::to_string(graph_index));
            }
            return {policy.fixed};
        case SourcePolicy::Kind::Sample: {
            if (policy.sample_size < 1 || policy.sample_size > n) {
                throw std::invalid_argument("plan: sample size must be in [1, n]");
            }
            std::vector<NodeId> pool(n);
            std::iota(pool.begin(), pool.end(), NodeId{0});
            auto stream = ChoiceTape(base_seed).stream(graph_index, 0,
                                                       ChoiceTape::Purpose::SourceSample);
            // Partial Fisher-Yates: the first k slots are the sample.
            for (std::size_t i = 0; i < policy.sample_size; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(stream.uniform(n - i));
                std::swap(pool[i], pool[j]);
            }
            pool.resize(policy.sample_size);
            std::sort(pool.begin(), pool.end());
            return pool;
        }
    }
    throw std::invalid_argument("plan: unknown source policy");
}

struct TaskKey {
    std::size_t graph_index;
    NodeId source;
    std::uint32_t trial;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, unsigned jobs) {
    if (plan.trials < 1) {
        throw std::invalid_argument("plan: trials must be >= 1");
    }
    if (plan.graphs.empty()) {
        throw std::invalid_argument("plan: at least one graph spec required");
    }
    if (plan.max_rounds < 1) {
        throw std::invalid_argument("plan: max_rounds must be >= 1");
    }

    // Build everything up front: an invalid spec must abort before any run.
    std::vector<Graph> graphs;
    graphs.reserve(plan.graphs.size());
    for (const GraphSpec& spec : plan.graphs) {
        graphs.push_back(generate(spec));
    }
    std::vector<std::vector<NodeId>> sources;
    sources.reserve(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        sources.push_back(sources_for(plan.sources, graphs[gi], plan.base_seed, gi));
    }

    std::vector<TaskKey> tasks;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        for (const NodeId source : sources[gi]) {
            for (std::uint32_t trial = 0; trial < plan.trials; ++trial) {
                tasks.push_back(TaskKey{gi, source, trial});
            }
        }
    }

    ExperimentResult result;
    result.trials.resize(tasks.size());
    for (const GraphSpec& spec : plan.graphs) {
        result.graph_ids.push_back(spec.id());
    }

    const auto run_task = [&](std::size_t index) {
        const TaskKey& key = tasks[index];
        RunConfig config;
        config.protocol = plan.protocol;
        config.model = plan.model;
        config.source = key.source;
        config.seed = derive_seed(plan.base_seed, key.graph_index, key.source, key.trial);
        config.tie_break = plan.tie_break;
        config.buffer_capacity = plan.buffer_capacity;
        config.max_rounds = plan.max_rounds;
        const Trace trace = simulate(graphs[key.graph_index], config);
        TrialResult& out = result.trials[index];
        out.graph_index = key.graph_index;
        out.source = key.source;
        out.trial = key.trial;
        out.seed = config.seed;
        out.completion_round = trace.completion_round;
        out.total_messages = trace.total_messages_sent;
        out.max_buffer = trace.max_buffer_overall();
    };

    const unsigned worker_count = std::max(1u, jobs);
    if (worker_count == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            run_task(i);
        }
    } else {
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < tasks.size(); i += worker_count) {
                    run_task(i);
                }
            });
        }
        for (std::thread& t : workers) {
            t.join();
        }
    }

    // Aggregate by (graph, source). Tasks were generated per cell in order,
    // so each cell's trials are a contiguous slice of the results.
    std::size_t cursor = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        GraphSummary summary;
        summary.graph_id = result.graph_ids[gi];
        double worst = std::numeric_limits<double>::quiet_NaN();
        for (const NodeId source : sources[gi]) {
            SourceSummary cell;
            cell.source = source;
            cell.trials = plan.trials;
            std::vector<std::uint32_t> completions;
            for (std::uint32_t t = 0; t < plan.trials; ++t) {
                const TrialResult& trial = result.trials[cursor++];
                if (trial.completion_round) {
                    completions.push_back(*trial.completion_round);
                } else {
                    ++result.censored_runs;
                }
            }
            cell.completed = static_cast<std::uint32_t>(completions.size());
            cell.censored_fraction =
                static_cast<double>(plan.trials - cell.completed) / plan.trials;
            if (!completions.empty()) {
                const double sum = std::accumulate(completions.begin(), completions.end(), 0.0);
                cell.mean = sum / completions.size();
                double sq = 0.0;
                for (const std::uint32_t c : completions) {
                    const double d = c - cell.mean;
                    sq += d * d;
                }
                cell.std_dev =
                    completions.size() > 1 ? std::sqrt(sq / (completions.size() - 1)) : 0.0;
                cell.ci95 = 1.96 * cell.std_dev / std::sqrt(completions.size());
                cell.min = *std::min_element(completions.begin(), completions.end());
                cell.max = *std::max_element(completions.begin(), completions.end());
                if (std::isnan(worst) || cell.mean > worst) {
                    worst = cell.mean;
                }
            } else {
                cell.mean = std::numeric_limits<double>::quiet_NaN();
                cell.std_dev = std::numeric_limits<double>::quiet_NaN();
                cell.ci95 = std::numeric_limits<double>::quiet_NaN();
            }
            summary.per_source.push_back(cell);
        }
        summary.worst_source_mean = worst;
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

double scaling_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) {
        throw std::invalid_argument("scaling_fit: need at least 2 points");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& [x, y] : points) {
        if (!(x > 0) || !(y > 0)) {
            throw std::invalid_argument("scaling_fit: points must be positive");
        }
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("scaling_fit: need at least 2 distinct x values");
    }
    return sxy / sxx;
}

namespace {

using ordered_json = nlohmann::ordered_json;

GraphSpec graph_spec_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "complete") {
        return GraphSpec::complete(j.at("n").get<std::size_t>());
    }
    if (kind == "path") {
        return GraphSpec::path(j.at("n").get<std::size_t>());
    }
    if (kind == "star") {
        return GraphSpec::star(j.at("delta").get<std::size_t>());
    }
    if (kind == "star-chain") {
        return GraphSpec::star_chain(j.at("d").get<std::size_t>(),
                                     j.at("delta").get<std::size_t>());
    }
    if (kind == "random-regular") {
        return GraphSpec::random_regular(j.at("n").get<std::size_t>(),
                                         j.at("degree").get<std::size_t>(),
                                         j.value("seed", std::uint64_t{0}));
    }
    if (kind == "edge-list") {
        return GraphSpec::edge_list_file(j.at("path").get<std::string>());
    }
    throw std::invalid_argument("plan: unknown graph kind '" + kind + "'");
}

ordered_json graph_spec_to_json(const GraphSpec& spec) {
    ordered_json j;
    switch (spec.kind) {
        case GraphSpec::Kind::Complete:
            j["kind"] = "complete";
            j["n"] = spec.n;
            break;
        case GraphSpec::Kind::Path:
            j["kind"] = "path";
            j["n"] = spec.n;
            break;
        case GraphSpec::Kind::Star:
            j["kind"] = "star";
            j["delta"] = spec.delta;
            break;
        case GraphSpec::Kind::StarChain:
            j["kind"] = "star-chain";
            j["d"] = spec.d;
            j["delta"] = spec.delta;
            break;
        case GraphSpec::Kind::RandomRegular:
            j["kind"] = "random-regular";
            j["n"] = spec.n;
            j["degree"] = spec.degree;
            j["seed"] = spec.seed;
            break;
        case GraphSpec::Kind::EdgeListFile:
            j["kind"] = "edge-list";
            j["path"] = spec.file_path;
            break;
    }
    return j;
}

}  // namespace

ExperimentPlan plan_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("plan: invalid JSON: ") + e.what());
    }
    try {
        ExperimentPlan plan;
        for (const auto& g : j.at("graphs")) {
            plan.graphs.push_back(graph_spec_from_json(g));
        }
        plan.protocol = parse_protocol(j.at("protocol").get<std::string>());
        plan.model = parse_model(j.at("model").get<std::string>());
        plan.trials = j.at("trials").get<std::uint32_t>();
        const auto& sources = j.at("sources");
        if (sources.is_string() && sources.get<std::string>() == "all") {
            plan.sources = SourcePolicy::all();
        } else if (sources.is_object() && sources.contains("fixed")) {
            plan.sources = SourcePolicy::fixed_node(sources.at("fixed").get<NodeId>());
        } else if (sources.is_object() && sources.contains("sample")) {
            plan.sources = SourcePolicy::sample(sources.at("sample").get<std::size_t>());
        } else {
            throw std::invalid_argument(
                "plan: sources must be \"all\", {\"fixed\": id} or {\"sample\": k}");
        }
        plan.base_seed = j.value("base_seed", std::uint64_t{0});
        plan.tie_break =
            parse_tie_break(j.value("tie_break", std::string("uniform-random")));
        if (j.contains("buffer_capacity") && !j.at("buffer_capacity").is_null()) {
            plan.buffer_capacity = j.at("buffer_capacity").get<std::size_t>();
        }
        plan.max_rounds = j.value("max_rounds", std::uint32_t{100000});
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("plan: ") + e.what());
    }
}

std::string plan_to_json_text(const ExperimentPlan& plan) {
    ordered_json j;
    ordered_json graphs = ordered_json::array();
    for (const GraphSpec& spec : plan.graphs) {
        graphs.push_back(graph_spec_to_json(spec));
    }
    j["graphs"] = std::move(graphs);
    j["protocol"] = to_string(plan.protocol);
    j["model"] = to_string(plan.model);
    j["trials"] = plan.trials;
    switch (plan.sources.kind) {
        case SourcePolicy::Kind::All:
            j["sources"] = "all";
            break;
        case SourcePolicy::Kind::Fixed:
            j["sources"] = ordered_json{{"fixed", plan.sources.fixed}};
            break;
        case SourcePolicy::Kind::Sample:
            j["sources"] = ordered_json{{"sample", plan.sources.sample_size}};
            break;
    }
    j["base_seed"] = plan.base_seed;
    j["tie_break"] = to_string(plan.tie_break);
    if (plan.buffer_capacity) {
        j["buffer_capacity"] = *plan.buffer_capacity;
    } else {
        j["buffer_capacity"] = nullptr;
    }
    j["max_rounds"] = plan.max_rounds;
    return j.dump(2);
}

namespace {

std::string format_stat(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void write_results_csv(const ExperimentPlan& plan, const ExperimentResult& result,
                       std::ostream& out) {
    out << "graph_id,protocol,model,tie_break,source,trial,seed,completion_round,censored,"
           "total_messages,max_buffer\n";
    for (const TrialResult& t : result.trials) {
        out << result.graph_ids[t.graph_index] << ',' << to_string(plan.protocol) << ','
            << to_string(plan.model) << ',' << to_string(plan.tie_break) << ',' << t.source << ','
            << t.trial << ',' << t.seed << ',';
        if (t.completion_round) {
            out << *t.completion_round;
        }
        out << ',' << (t.censored() ? 1 : 0) << ',' << t.total_messages << ',' << t.max_buffer
            << '\n';
    }
}

void write_summary_csv(const ExperimentPlan& plan, const ExperimentResult& result,
                       std::ostream& out) {
    out << "graph_id,protocol,model,source,trials,mean,std,min,max,ci95,worst_source_mean\n";
    for (const GraphSummary& graph : result.summaries) {
        for (const SourceSummary& cell : graph.per_source) {
            out << graph.graph_id << ',' << to_string(plan.protocol) << ','
                << to_string(plan.model) << ',' << cell.source << ',' << cell.trials << ','
                << format_stat(cell.mean) << ',' << format_stat(cell.std_dev) << ',';
            if (cell.completed > 0) {
                out << cell.min << ',' << cell.max;
            } else {
                out << ',';
            }
            out << ',' << format_stat(cell.ci95) << ',' << format_stat(graph.worst_source_mean)
                << '\n';
        }
    }
}

}  // namespace gossip
