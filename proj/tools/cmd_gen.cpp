#include "common.hpp"

#include "gossip/graph.hpp"

#include <memory>
#include <sstream>

namespace gossipsim {

void setup_gen(CLI::App& app) {
    auto cmd = app.add_subcommand("gen", "Generate a graph and write it as an edge list");
    auto opts = std::make_shared<GraphSourceOptions>();
    auto out_path = std::make_shared<std::string>();
    add_graph_source_options(*cmd, *opts, /*generator_seed_flag=*/true);
    cmd->add_option("--out", *out_path, "Output file (default: stdout)");

    cmd->callback([opts, out_path] {
        if (!opts->graph_file.empty()) {
            throw std::invalid_argument("gen: use --kind, not --graph");
        }
        const gossip::Graph g = gossip::generate(opts->to_spec());
        std::ostringstream text;
        gossip::write_edge_list(g, text);
        write_output(*out_path, text.str());
    });
}

}  // namespace gossipsim
