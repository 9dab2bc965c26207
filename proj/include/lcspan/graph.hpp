#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lcspan {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Unweighted hop count; Infinity orders above every finite value.
class Distance {
public:
    constexpr Distance() = default;
    constexpr explicit Distance(std::uint32_t hops) : hops_(hops) {}

    static constexpr Distance infinity() { return Distance{}; }

    constexpr bool is_finite() const { return hops_ != kInf; }
    std::uint32_t value() const;

    std::string to_string() const;

    friend constexpr auto operator<=>(const Distance&, const Distance&) = default;

private:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t hops_ = kInf;
};

// Immutable undirected simple graph. Edge ids index the edge list sorted by
// (min endpoint, max endpoint); every stored edge has u < v. Adjacency is kept
// in CSR form with neighbours sorted ascending.
class Graph {
public:
    Graph() = default;

    // Orientation of the input pairs is irrelevant. Throws InputError on
    // self-loops, duplicate edges and out-of-range endpoints.
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    std::span<const Vertex> neighbors(Vertex v) const
    {
        return {adj_vertex_.data() + offsets_[v], adj_vertex_.data() + offsets_[v + 1]};
    }
    std::span<const EdgeId> incident_edges(Vertex v) const
    {
        return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

    // Same vertex set, only the listed edges (ids of this graph). Duplicates collapse.
    Graph edge_subgraph(std::span<const EdgeId> keep) const;

    // FNV-1a over the vertex count and the canonical edge list.
    std::uint64_t fingerprint() const;

    bool operator==(const Graph& other) const
    {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_vertex_;
    std::vector<EdgeId> adj_edge_;
};

// Reusable BFS state; one per worker thread. Reset is O(1) via visit stamps.
class BfsScratch {
public:
    explicit BfsScratch(std::size_t vertex_count = 0) { resize(vertex_count); }

    void resize(std::size_t vertex_count);

    // Hop distance from src to dst, ignoring edge `skip` (pass no_edge to use
    // every edge). Gives up and returns Infinity once the search passes
    // max_depth.
    Distance distance(const Graph& g, Vertex src, Vertex dst, EdgeId skip, std::uint32_t max_depth);

    static constexpr EdgeId no_edge = std::numeric_limits<EdgeId>::max();

private:
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> depth_;
    std::vector<Vertex> queue_;
    std::uint32_t current_ = 0;
};

// Exact hop counts from src; with a cap, vertices farther than cap report Infinity.
std::vector<Distance> bfs_distances(const Graph& g, Vertex src,
                                    std::optional<std::uint32_t> cap = std::nullopt);

// Shortest cycle through edge e: dist_{g-e}(u, v) + 1, Infinity for bridges.
Distance edge_cycle_length(const Graph& g, EdgeId e);

// As above but only searches cycles of length <= limit; longer ones report Infinity.
Distance edge_cycle_length(const Graph& g, EdgeId e, std::uint32_t limit);

// Vertices of one shortest src-dst path avoiding edge `skip`; empty if none.
std::vector<Vertex> shortest_path(const Graph& g, Vertex src, Vertex dst,
                                  EdgeId skip = BfsScratch::no_edge);

// Vertices of one shortest cycle (closing edge implied), empty for forests.
std::vector<Vertex> shortest_cycle(const Graph& g);

// Minimum over edges of edge_cycle_length; Infinity for forests. Parallel over edges.
Distance girth(const Graph& g);

struct BipartiteResult {
    bool bipartite = false;
    std::optional<std::vector<std::uint8_t>> colors;
};

BipartiteResult is_bipartite(const Graph& g);

namespace serial {

// Single-threaded reference for girth(); no pruning.
Distance girth(const Graph& g);

}  // namespace serial

}  // namespace lcspan
