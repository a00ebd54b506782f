#include "common.hpp"

#include "gossip/choice_tape.hpp"
#include "gossip/coupling.hpp"

#include <memory>
#include <sstream>

namespace gossipsim {

namespace {

struct CoupleOptions {
    GraphSourceOptions graph;
    std::string protocol = "push";
    gossip::NodeId source = 0;
    std::size_t seeds = 0;
    std::uint64_t base_seed = 0;
    std::uint32_t max_rounds = 100000;
    bool no_traces = false;
    std::string out_path;
};

}  // namespace

void setup_couple(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "couple", "Run classical and buffered models on shared randomness and compare "
                  "informed sets round by round");
    auto opts = std::make_shared<CoupleOptions>();
    add_graph_source_options(*cmd, opts->graph);
    cmd->add_option("--protocol", opts->protocol, "push, pull or push-pull");
    cmd->add_option("--source", opts->source, "Source node id (default 0)");
    cmd->add_option("--seeds", opts->seeds, "Number of coupled runs")->required();
    const CLI::Option* seed_flag = cmd->add_option(
        "--seed", opts->base_seed, "Base seed (default: $GOSSIP_SEED, else 0)");
    cmd->add_option("--max-rounds", opts->max_rounds, "Safety cap per run");
    cmd->add_flag("--no-traces", opts->no_traces, "Omit the embedded traces");
    cmd->add_option("--out", opts->out_path, "Output file (default: stdout)");

    cmd->callback([opts, seed_flag] {
        if (opts->seeds == 0) {
            throw std::invalid_argument("couple: --seeds must be >= 1");
        }
        const gossip::Protocol protocol = gossip::parse_protocol(opts->protocol);
        const std::uint64_t base = resolve_seed(seed_flag, opts->base_seed);
        const gossip::GraphSpec spec = opts->graph.to_spec();
        const gossip::Graph g = gossip::generate(spec);

        std::size_t divergences = 0;
        std::ostringstream reports;
        for (std::size_t i = 0; i < opts->seeds; ++i) {
            const std::uint64_t seed = gossip::mix64(gossip::mix64(base) ^ i);
            const gossip::CouplingReport report =
                gossip::run_coupled(g, opts->source, protocol, seed, opts->max_rounds);
            if (!report.informed_sets_equal_every_round) {
                ++divergences;
            }
            if (i > 0) {
                reports << ",";
            }
            reports << gossip::to_json_string(report, !opts->no_traces);
        }

        std::ostringstream out;
        out << "{\"graph\":\"" << spec.id() << "\",\"protocol\":\""
            << gossip::to_string(protocol) << "\",\"source\":" << opts->source
            << ",\"seeds\":" << opts->seeds
            << ",\"all_equal_every_round\":" << (divergences == 0 ? "true" : "false")
            << ",\"divergences\":" << divergences << ",\"reports\":[" << reports.str()
            << "]}\n";
        write_output(opts->out_path, out.str());
    });
}

}  // namespace gossipsim
