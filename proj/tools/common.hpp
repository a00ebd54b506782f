#pragma once

#include "gossip/graph.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gossipsim {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCensored = 2;
inline constexpr int kExitIo = 3;

// Subcommand callbacks signal a run cut off at max_rounds by throwing this;
// main maps it to kExitCensored.
struct CensoredRun : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags describing where the graph comes from: an edge-list file (--graph) or
// an inline generator spec (--kind plus its parameters).
struct GraphSourceOptions {
    std::string graph_file;
    std::string kind;
    std::size_t n = 0;
    std::size_t delta = 0;
    std::size_t d = 0;
    std::size_t degree = 0;
    std::uint64_t graph_seed = 0;

    gossip::GraphSpec to_spec() const;
};

// Registers --graph/--kind/... on `cmd`. When `generator_seed_flag` is set the
// generator seed flag is named --seed (the gen command), otherwise
// --graph-seed so it cannot collide with a run seed.
void add_graph_source_options(CLI::App& cmd, GraphSourceOptions& opts,
                              bool generator_seed_flag = false);

// Base seed fallback: GOSSIP_SEED from the environment when the flag was not
// given; the flag always wins.
std::uint64_t resolve_seed(const CLI::Option* seed_flag, std::uint64_t flag_value);

// Writes `text` to `path`, or to stdout when path is empty. File errors throw
// gossip::IoError. Content is always composed before this call, so a failed
// command never leaves a partial file behind.
void write_output(const std::string& path, const std::string& text);

}  // namespace gossipsim
