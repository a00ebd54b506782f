#include "gossip/graph.hpp"

#include "gossip/choice_tape.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace gossip {

namespace {

std::uint64_t pack_edge(NodeId u, NodeId v) {
    const NodeId lo = std::min(u, v);
    const NodeId hi = std::max(u, v);
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

// Distances from `source`, -1 for unreachable.
std::vector<int> bfs_distances(const Graph& g, NodeId source) {
    std::vector<int> dist(g.node_count(), -1);
    std::deque<NodeId> queue;
    dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (const NodeId w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

Graph::Graph(std::vector<std::vector<NodeId>> adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.empty()) {
        throw std::invalid_argument("graph: node count must be at least 1");
    }
    const std::size_t n = adjacency_.size();
    port_index_.resize(n);
    std::size_t endpoint_count = 0;
    for (NodeId v = 0; v < n; ++v) {
        const auto& nbrs = adjacency_[v];
        auto& index = port_index_[v];
        index.reserve(nbrs.size());
        for (std::uint32_t port = 0; port < nbrs.size(); ++port) {
            const NodeId w = nbrs[port];
            if (w >= n) {
                throw std::invalid_argument("graph: neighbor id out of range at node " +
                                            std::to_string(v));
            }
            if (w == v) {
                throw std::invalid_argument("graph: self-loop at node " + std::to_string(v));
            }
            index.emplace_back(w, port);
        }
        std::sort(index.begin(), index.end());
        for (std::size_t i = 1; i < index.size(); ++i) {
            if (index[i].first == index[i - 1].first) {
                throw std::invalid_argument("graph: duplicate neighbor " +
                                            std::to_string(index[i].first) + " at node " +
                                            std::to_string(v));
            }
        }
        endpoint_count += nbrs.size();
        max_degree_ = std::max(max_degree_, nbrs.size());
    }
    // Symmetry: every directed entry must have its reverse.
    for (NodeId v = 0; v < n; ++v) {
        for (const NodeId w : adjacency_[v]) {
            const auto& index = port_index_[w];
            const auto it = std::lower_bound(index.begin(), index.end(),
                                             std::make_pair(v, std::uint32_t{0}));
            if (it == index.end() || it->first != v) {
                throw std::invalid_argument("graph: edge " + std::to_string(v) + "-" +
                                            std::to_string(w) + " is not symmetric");
            }
        }
    }
    edge_count_ = endpoint_count / 2;
}

std::size_t Graph::port_of(NodeId v, NodeId neighbor) const {
    const auto& index = port_index_.at(v);
    const auto it =
        std::lower_bound(index.begin(), index.end(), std::make_pair(neighbor, std::uint32_t{0}));
    if (it == index.end() || it->first != neighbor) {
        throw std::invalid_argument("graph: " + std::to_string(neighbor) +
                                    " is not a neighbor of " + std::to_string(v));
    }
    return it->second;
}

bool Graph::is_regular() const noexcept {
    for (const auto& nbrs : adjacency_) {
        if (nbrs.size() != max_degree_) {
            return false;
        }
    }
    return true;
}

std::size_t Graph::regular_degree() const {
    if (!is_regular()) {
        throw std::logic_error("graph: regular_degree on a non-regular graph");
    }
    return max_degree_;
}

bool Graph::is_connected() const {
    const auto dist = bfs_distances(*this, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId v = 0; v < adjacency_.size(); ++v) {
        for (const NodeId w : adjacency_[v]) {
            if (v < w) {
                out.emplace_back(v, w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GraphSpec GraphSpec::complete(std::size_t n) {
    GraphSpec s;
    s.kind = Kind::Complete;
    s.n = n;
    return s;
}

GraphSpec GraphSpec::path(std::size_t n) {
    GraphSpec s;
    s.kind = Kind::Path;
    s.n = n;
    return s;
}

GraphSpec GraphSpec::star(std::size_t delta) {
    GraphSpec s;
    s.kind = Kind::Star;
    s.delta = delta;
    return s;
}

GraphSpec GraphSpec::star_chain(std::size_t d, std::size_t delta) {
    GraphSpec s;
    s.kind = Kind::StarChain;
    s.d = d;
    s.delta = delta;
    return s;
}

GraphSpec GraphSpec::random_regular(std::size_t n, std::size_t degree, std::uint64_t seed) {
    GraphSpec s;
    s.kind = Kind::RandomRegular;
    s.n = n;
    s.degree = degree;
    s.seed = seed;
    return s;
}

GraphSpec GraphSpec::edge_list_file(std::string path) {
    GraphSpec s;
    s.kind = Kind::EdgeListFile;
    s.file_path = std::move(path);
    return s;
}

std::string GraphSpec::id() const {
    switch (kind) {
        case Kind::Complete:
            return "complete-" + std::to_string(n);
        case Kind::Path:
            return "path-" + std::to_string(n);
        case Kind::Star:
            return "star-" + std::to_string(delta);
        case Kind::StarChain:
            return "star-chain-" + std::to_string(d) + "x" + std::to_string(delta);
        case Kind::RandomRegular:
            return "random-regular-" + std::to_string(n) + "-" + std::to_string(degree) + "-s" +
                   std::to_string(seed);
        case Kind::EdgeListFile:
            return "file:" + file_path;
    }
    return "unknown";
}

namespace {

Graph build_complete(std::size_t n) {
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v < n; ++v) {
        adj[v].reserve(n - 1);
        for (NodeId w = 0; w < n; ++w) {
            if (w != v) {
                adj[v].push_back(w);
            }
        }
    }
    return Graph(std::move(adj));
}

Graph build_path(std::size_t n) {
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v + 1 < n; ++v) {
        adj[v].push_back(v + 1);
        adj[v + 1].push_back(v);
    }
    return Graph(std::move(adj));
}

Graph build_star_chain(std::size_t d, std::size_t delta) {
    const std::size_t n = d * (delta + 1);
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t c = 0; c < d; ++c) {
        const NodeId center = static_cast<NodeId>(c);
        if (c > 0) {
            adj[center].push_back(center - 1);
        }
        if (c + 1 < d) {
            adj[center].push_back(center + 1);
        }
        for (std::size_t i = 0; i < delta; ++i) {
            const NodeId leaf = static_cast<NodeId>(d + c * delta + i);
            adj[center].push_back(leaf);
            adj[leaf].push_back(center);
        }
    }
    return Graph(std::move(adj));
}

Graph build_random_regular(std::size_t n, std::size_t degree, std::uint64_t seed) {
    // Configuration-model pairing with pair-level rejection: draw two stubs
    // uniformly at random, reject the pair if it would form a self-loop or a
    // multi-edge, and restart the whole pairing when no progress is possible.
    // Disconnected samples are also rejected. Wholesale rejection of complete
    // pairings breaks down already for moderate degrees, where almost every
    // pairing has a collision; pair-level rejection stays near-uniform and
    // cheap at desk scale.
    const ChoiceTape tape(seed);
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto stream = tape.stream(0, static_cast<std::uint64_t>(attempt),
                                  ChoiceTape::Purpose::GraphBuild);
        std::vector<NodeId> stubs;
        stubs.reserve(n * degree);
        for (NodeId v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < degree; ++i) {
                stubs.push_back(v);
            }
        }
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::vector<NodeId>> adj(n);
        bool stuck = false;
        while (stubs.size() >= 2 && !stuck) {
            int rejects = 0;
            while (true) {
                const std::size_t i = static_cast<std::size_t>(stream.uniform(stubs.size()));
                std::size_t j = static_cast<std::size_t>(stream.uniform(stubs.size() - 1));
                if (j >= i) {
                    ++j;
                }
                const NodeId u = stubs[i];
                const NodeId v = stubs[j];
                if (u != v && seen.find(pack_edge(u, v)) == seen.end()) {
                    seen.insert(pack_edge(u, v));
                    adj[u].push_back(v);
                    adj[v].push_back(u);
                    // Remove both stubs, higher index first.
                    const std::size_t hi = std::max(i, j);
                    const std::size_t lo = std::min(i, j);
                    stubs[hi] = stubs.back();
                    stubs.pop_back();
                    stubs[lo] = stubs.back();
                    stubs.pop_back();
                    break;
                }
                if (++rejects > 1000) {
                    stuck = true;
                    break;
                }
            }
        }
        if (stuck) {
            continue;
        }
        Graph g(std::move(adj));
        if (g.is_connected()) {
            return g;
        }
    }
    throw std::runtime_error(
        "random-regular: no connected simple pairing found after " +
        std::to_string(kMaxAttempts) + " attempts (n=" + std::to_string(n) +
        ", degree=" + std::to_string(degree) + ")");
}

}  // namespace

Graph generate(const GraphSpec& spec) {
    switch (spec.kind) {
        case GraphSpec::Kind::Complete:
            if (spec.n < 1) {
                throw std::invalid_argument("complete: n must be >= 1");
            }
            return build_complete(spec.n);
        case GraphSpec::Kind::Path:
            if (spec.n < 1) {
                throw std::invalid_argument("path: n must be >= 1");
            }
            return build_path(spec.n);
        case GraphSpec::Kind::Star:
            if (spec.delta < 1) {
                throw std::invalid_argument("star: delta must be >= 1");
            }
            return build_star_chain(1, spec.delta);
        case GraphSpec::Kind::StarChain:
            if (spec.d < 1) {
                throw std::invalid_argument("star-chain: d must be >= 1");
            }
            if (spec.delta < 1) {
                throw std::invalid_argument("star-chain: delta must be >= 1");
            }
            return build_star_chain(spec.d, spec.delta);
        case GraphSpec::Kind::RandomRegular: {
            if (spec.n < 1) {
                throw std::invalid_argument("random-regular: n must be >= 1");
            }
            if (spec.degree >= spec.n) {
                throw std::invalid_argument("random-regular: degree must be < n");
            }
            if ((spec.n * spec.degree) % 2 != 0) {
                throw std::invalid_argument("random-regular: n * degree must be even");
            }
            if (spec.n >= 2 && spec.degree == 0) {
                throw std::invalid_argument("random-regular: degree must be >= 1 for n >= 2");
            }
            if (spec.n > 2 && spec.degree == 1) {
                throw std::invalid_argument(
                    "random-regular: a connected 1-regular graph requires n == 2");
            }
            return build_random_regular(spec.n, spec.degree, spec.seed);
        }
        case GraphSpec::Kind::EdgeListFile:
            if (spec.file_path.empty()) {
                throw std::invalid_argument("edge-list: path must be non-empty");
            }
            return read_edge_list_file(spec.file_path);
    }
    throw std::invalid_argument("graph spec: unknown kind");
}

std::size_t diameter(const Graph& g) {
    std::size_t best = 0;
    for (NodeId source = 0; source < g.node_count(); ++source) {
        const auto dist = bfs_distances(g, source);
        for (const int d : dist) {
            if (d < 0) {
                throw std::invalid_argument("diameter: graph is disconnected");
            }
            best = std::max(best, static_cast<std::size_t>(d));
        }
    }
    return best;
}

std::vector<std::vector<NodeId>> bfs_layers(const Graph& g, NodeId source) {
    if (source >= g.node_count()) {
        throw std::invalid_argument("bfs_layers: source id out of range");
    }
    const auto dist = bfs_distances(g, source);
    const int depth = *std::max_element(dist.begin(), dist.end());
    std::vector<std::vector<NodeId>> layers(static_cast<std::size_t>(depth) + 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (dist[v] >= 0) {
            layers[static_cast<std::size_t>(dist[v])].push_back(v);
        }
    }
    return layers;
}

LoadProfile load_profile(const Graph& g) {
    if (g.node_count() < 2) {
        throw std::invalid_argument("load_profile: graph must have at least 2 nodes");
    }
    LoadProfile profile;
    profile.per_node_load.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        Rational load(0);
        for (const NodeId w : g.neighbors(v)) {
            const std::size_t dw = g.degree(w);
            if (dw == 0) {
                throw std::invalid_argument("load_profile: node " + std::to_string(w) +
                                            " has no neighbors");
            }
            load += Rational(BigInt(1), BigInt(dw));
        }
        profile.per_node_load.push_back(std::move(load));
    }
    profile.max_load =
        *std::max_element(profile.per_node_load.begin(), profile.per_node_load.end());
    return profile;
}

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_set<std::uint64_t> seen;
    NodeId max_id = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        long long a = -1;
        long long b = -1;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0) {
            throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no) +
                                        ": '" + line + "'");
        }
        const NodeId u = static_cast<NodeId>(a);
        const NodeId v = static_cast<NodeId>(b);
        if (u == v) {
            throw std::invalid_argument("edge list: self-loop at line " + std::to_string(line_no));
        }
        if (!seen.insert(pack_edge(u, v)).second) {
            throw std::invalid_argument("edge list: duplicate edge at line " +
                                        std::to_string(line_no));
        }
        edges.emplace_back(u, v);
        max_id = std::max({max_id, u, v});
    }
    if (edges.empty()) {
        throw std::invalid_argument("edge list: no edges");
    }
    std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(max_id) + 1);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    Graph g(std::move(adj));
    if (!g.is_connected()) {
        throw std::invalid_argument("edge list: graph is disconnected");
    }
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open edge list file: " + path);
    }
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    write_edge_list(g, out);
    if (!out) {
        throw IoError("failed writing edge list to: " + path);
    }
}

}  // namespace gossip
