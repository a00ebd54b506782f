#include "gossip/protocol.hpp"

#include <stdexcept>

namespace gossip {

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Push:
            return "push";
        case Protocol::Pull:
            return "pull";
        case Protocol::PushPull:
            return "push-pull";
    }
    return "?";
}

std::string to_string(Model m) {
    return m == Model::Buffered ? "buffered" : "classical";
}

std::string to_string(TieBreak t) {
    return t == TieBreak::UniformRandom ? "uniform-random" : "port-order";
}

Protocol parse_protocol(const std::string& s) {
    if (s == "push") {
        return Protocol::Push;
    }
    if (s == "pull") {
        return Protocol::Pull;
    }
    if (s == "push-pull" || s == "pushpull") {
        return Protocol::PushPull;
    }
    throw std::invalid_argument("unknown protocol: '" + s + "' (push, pull, push-pull)");
}

Model parse_model(const std::string& s) {
    if (s == "buffered") {
        return Model::Buffered;
    }
    if (s == "classical") {
        return Model::Classical;
    }
    throw std::invalid_argument("unknown model: '" + s + "' (buffered, classical)");
}

TieBreak parse_tie_break(const std::string& s) {
    if (s == "uniform-random") {
        return TieBreak::UniformRandom;
    }
    if (s == "port-order") {
        return TieBreak::PortOrder;
    }
    throw std::invalid_argument("unknown tie break: '" + s +
                                "' (uniform-random, port-order)");
}

void validate(const Graph& g, const RunConfig& config) {
    if (config.source >= g.node_count()) {
        throw std::invalid_argument("run config: source id out of range");
    }
    if (config.max_rounds < 1) {
        throw std::invalid_argument("run config: max_rounds must be >= 1");
    }
    if (!g.is_connected()) {
        throw std::invalid_argument("run config: graph must be connected");
    }
}

}  // namespace gossip
