#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gossipsim {

gossip::GraphSpec GraphSourceOptions::to_spec() const {
    using gossip::GraphSpec;
    if (!graph_file.empty()) {
        return GraphSpec::edge_list_file(graph_file);
    }
    if (kind == "complete") {
        return GraphSpec::complete(n);
    }
    if (kind == "path") {
        return GraphSpec::path(n);
    }
    if (kind == "star") {
        return GraphSpec::star(delta);
    }
    if (kind == "star-chain") {
        return GraphSpec::star_chain(d, delta);
    }
    if (kind == "random-regular") {
        return GraphSpec::random_regular(n, degree, graph_seed);
    }
    if (kind.empty()) {
        throw std::invalid_argument("no graph source: pass --graph FILE or --kind KIND");
    }
    throw std::invalid_argument("unknown graph kind: '" + kind + "'");
}

void add_graph_source_options(CLI::App& cmd, GraphSourceOptions& opts,
                              bool generator_seed_flag) {
    cmd.add_option("--graph", opts.graph_file, "Edge-list file to load the graph from");
    cmd.add_option("--kind", opts.kind,
                   "Generator kind: complete, path, star, star-chain, random-regular")
        ->check(CLI::IsMember({"complete", "path", "star", "star-chain", "random-regular"}));
    cmd.add_option("--n", opts.n, "Node count (complete, path, random-regular)");
    cmd.add_option("--delta", opts.delta, "Leaves per star (star, star-chain)");
    cmd.add_option("--d", opts.d, "Number of stars in the chain (star-chain)");
    cmd.add_option("--degree", opts.degree, "Degree (random-regular)");
    cmd.add_option(generator_seed_flag ? "--seed" : "--graph-seed", opts.graph_seed,
                   "Generator seed (random-regular)");
}

std::uint64_t resolve_seed(const CLI::Option* seed_flag, std::uint64_t flag_value) {
    if (seed_flag != nullptr && seed_flag->count() > 0) {
        return flag_value;
    }
    if (const char* env = std::getenv("GOSSIP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("GOSSIP_SEED is not a valid unsigned integer: " +
                                        std::string(env));
        }
    }
    return flag_value;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw gossip::IoError("cannot open output file: " + path);
    }
    out << text;
    if (!out) {
        throw gossip::IoError("failed writing to: " + path);
    }
}

}  // namespace gossipsim
