#include "common.hpp"

#include "gossip/bounds.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <memory>
#include <optional>

namespace gossipsim {

namespace {

struct BoundsOptions {
    GraphSourceOptions graph;
    std::string constants_path;
    std::string format = "table";
};

gossip::BoundsConstants load_constants(const std::string& path) {
    gossip::BoundsConstants constants;
    if (path.empty()) {
        return constants;
    }
    std::ifstream in(path);
    if (!in) {
        throw gossip::IoError("cannot open constants file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("constants file: invalid JSON: " + std::string(e.what()));
    }
    constants.c_regular = j.value("c_regular", constants.c_regular);
    constants.c_general = j.value("c_general", constants.c_general);
    constants.c_sqrt = j.value("c_sqrt", constants.c_sqrt);
    constants.c_cc = j.value("c_cc", constants.c_cc);
    return constants;
}

}  // namespace

void setup_bounds(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "bounds", "Evaluate the closed-form round bounds and the layer recursion for a graph");
    auto opts = std::make_shared<BoundsOptions>();
    add_graph_source_options(*cmd, opts->graph);
    cmd->add_option("--constants", opts->constants_path,
                    "JSON file with c_regular/c_general/c_sqrt/c_cc (default all 1.0)");
    cmd->add_option("--format", opts->format, "table (default) or json")
        ->check(CLI::IsMember({"table", "json"}));

    cmd->callback([opts] {
        const gossip::BoundsConstants constants = load_constants(opts->constants_path);
        const gossip::GraphSpec spec = opts->graph.to_spec();
        const gossip::Graph g = gossip::generate(spec);
        // The delta^d floor only makes sense for the star-chain family.
        std::optional<std::pair<std::size_t, std::size_t>> shape;
        if (spec.kind == gossip::GraphSpec::Kind::StarChain) {
            shape = std::make_pair(spec.d, spec.delta);
        } else if (spec.kind == gossip::GraphSpec::Kind::Star) {
            shape = std::make_pair(std::size_t{1}, spec.delta);
        }
        const gossip::BoundsReport report =
            gossip::evaluate_bounds(g, spec.id(), constants, shape);
        if (opts->format == "json") {
            write_output("", gossip::to_json_string(report) + "\n");
        } else {
            write_output("", gossip::to_table_string(report));
        }
    });
}

}  // namespace gossipsim
