#include "common.hpp"

#include "gossip/classical.hpp"
#include "gossip/engine.hpp"
#include "gossip/trace.hpp"

#include <iostream>
#include <memory>

namespace gossipsim {

namespace {

struct RunOptions {
    GraphSourceOptions graph;
    std::string protocol = "push";
    std::string model = "buffered";
    gossip::NodeId source = 0;
    std::uint64_t seed = 0;
    std::string tie_break = "uniform-random";
    std::uint32_t max_rounds = 100000;
    std::int64_t capacity = -1;  // <0 = unbounded
    std::string trace_path;
};

}  // namespace

void setup_run(CLI::App& app) {
    auto cmd = app.add_subcommand("run", "Single spreading run; prints the completion round");
    auto opts = std::make_shared<RunOptions>();
    add_graph_source_options(*cmd, opts->graph);
    cmd->add_option("--protocol", opts->protocol, "push, pull or push-pull")->required();
    cmd->add_option("--model", opts->model, "buffered (default) or classical");
    cmd->add_option("--source", opts->source, "Source node id (default 0)");
    const CLI::Option* seed_flag =
        cmd->add_option("--seed", opts->seed, "Run seed (default: $GOSSIP_SEED, else 0)");
    cmd->add_option("--tie-break", opts->tie_break, "uniform-random (default) or port-order");
    cmd->add_option("--max-rounds", opts->max_rounds, "Safety cap (default 100000)");
    cmd->add_option("--capacity", opts->capacity,
                    "Buffer capacity; omit for unbounded (drop-tail when set)");
    cmd->add_option("--trace", opts->trace_path, "Write the JSONL trace to this file");

    cmd->callback([opts, seed_flag] {
        gossip::RunConfig config;
        config.protocol = gossip::parse_protocol(opts->protocol);
        config.model = gossip::parse_model(opts->model);
        config.source = opts->source;
        config.seed = resolve_seed(seed_flag, opts->seed);
        config.tie_break = gossip::parse_tie_break(opts->tie_break);
        config.max_rounds = opts->max_rounds;
        if (opts->capacity >= 0) {
            config.buffer_capacity = static_cast<std::size_t>(opts->capacity);
        }
        const gossip::Graph g = gossip::generate(opts->graph.to_spec());
        const gossip::Trace trace = gossip::simulate(g, config);
        if (!opts->trace_path.empty()) {
            write_output(opts->trace_path, gossip::trace_to_jsonl(trace));
        }
        if (trace.censored()) {
            throw CensoredRun("run censored: not all nodes informed within " +
                              std::to_string(config.max_rounds) + " rounds");
        }
        std::cout << *trace.completion_round << "\n";
    });
}

}  // namespace gossipsim
