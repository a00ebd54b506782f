#pragma once

#include "gossip/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gossip {

enum class Protocol { Push, Pull, PushPull };

enum class Model { Buffered, Classical };

// Order in which simultaneous arrivals are appended to a buffer.
// UniformRandom draws a fresh permutation per recipient per round;
// PortOrder (ascending incoming port) is the deterministic adversary proxy.
enum class TieBreak { UniformRandom, PortOrder };

std::string to_string(Protocol p);
std::string to_string(Model m);
std::string to_string(TieBreak t);

// Parse the spellings used by the CLI and plan files ("push", "pull",
// "push-pull", "buffered", "classical", "uniform-random", "port-order").
Protocol parse_protocol(const std::string& s);
Model parse_model(const std::string& s);
TieBreak parse_tie_break(const std::string& s);

struct RunConfig {
    Protocol protocol = Protocol::Push;
    Model model = Model::Buffered;
    NodeId source = 0;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::UniformRandom;
    // Absent means unbounded. When set, appends beyond capacity are dropped
    // (drop-tail) and recorded in the trace counters.
    std::optional<std::size_t> buffer_capacity;
    std::uint32_t max_rounds = 100000;
};

// Throws std::invalid_argument if the config does not fit the graph.
void validate(const Graph& g, const RunConfig& config);

}  // namespace gossip
