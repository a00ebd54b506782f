#pragma once

#include "gossip/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gossip {

using NodeId = std::uint32_t;

// File/stream failures, as opposed to parameter errors (std::invalid_argument).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected simple graph with port-labeled adjacency: the position of a
// neighbor in a node's adjacency sequence is that node's local port label for
// the link. All random neighbor selection in the simulators draws a port.
class Graph {
public:
    // Takes ownership of the adjacency lists and validates that the graph is
    // undirected and simple. Connectivity is not required here; operations
    // that need it check explicitly.
    explicit Graph(std::vector<std::vector<NodeId>> adjacency);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_.at(v); }
    std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
    NodeId neighbor_at_port(NodeId v, std::size_t port) const { return adjacency_.at(v).at(port); }

    // Port label at `v` of the link leading to `neighbor`; throws if absent.
    std::size_t port_of(NodeId v, NodeId neighbor) const;

    std::size_t max_degree() const noexcept { return max_degree_; }
    bool is_regular() const noexcept;

    // Common degree of a regular graph; throws std::logic_error otherwise.
    std::size_t regular_degree() const;

    bool is_connected() const;

    // All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    // Per node: (neighbor, port) sorted by neighbor, for O(log d) port lookup.
    std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> port_index_;
    std::size_t edge_count_ = 0;
    std::size_t max_degree_ = 0;
};

// Parameter block for the generator. `seed` is consumed only by RandomRegular.
struct GraphSpec {
    enum class Kind { Complete, Path, Star, StarChain, RandomRegular, EdgeListFile };

    Kind kind = Kind::Complete;
    std::size_t n = 0;       // Complete, Path, RandomRegular
    std::size_t delta = 0;   // Star, StarChain (leaves per star)
    std::size_t d = 0;       // StarChain (number of stars)
    std::size_t degree = 0;  // RandomRegular
    std::uint64_t seed = 0;  // RandomRegular
    std::string file_path;   // EdgeListFile

    static GraphSpec complete(std::size_t n);
    static GraphSpec path(std::size_t n);
    static GraphSpec star(std::size_t delta);
    static GraphSpec star_chain(std::size_t d, std::size_t delta);
    static GraphSpec random_regular(std::size_t n, std::size_t degree, std::uint64_t seed);
    static GraphSpec edge_list_file(std::string path);

    // Stable identifier used in CSV output, e.g. "star-chain-2x8".
    std::string id() const;
};

// Builds the graph described by `spec`. Identical (spec, seed) pairs yield
// identical graphs. Throws std::invalid_argument naming the offending field.
//
// StarChain(d, delta) numbering: centers are 0..d-1 in path order, then the
// leaves grouped by center, so the leftmost central node is always node 0.
Graph generate(const GraphSpec& spec);

// Maximum over all pairs of the shortest-path length, by all-sources BFS.
// Throws std::invalid_argument if the graph is disconnected.
std::size_t diameter(const Graph& g);

// layers[0] = {source}; layers[i] = nodes at distance exactly i, ascending.
// Unreachable nodes (disconnected input) are absent from every layer.
std::vector<std::vector<NodeId>> bfs_layers(const Graph& g, NodeId source);

// Expected per-round message arrivals under random neighbor contact:
// per_node_load[u] = sum over neighbors w of 1/degree(w), exact.
struct LoadProfile {
    std::vector<Rational> per_node_load;
    Rational max_load;
};

// Requires node_count >= 2 (every node must have a neighbor for the load
// quantities to be meaningful).
LoadProfile load_profile(const Graph& g);

// Edge-list text format: one edge per line as two whitespace-separated
// 0-based decimal node ids; lines starting with '#' and blank lines are
// ignored; node count = 1 + max id. The reader accepts edges in any order but
// rejects self-loops, duplicate edges, and disconnected graphs. The writer
// emits each edge smaller-id first, sorted.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace gossip
