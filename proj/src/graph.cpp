#include "lcspan/graph.hpp"

#include <algorithm>
#include <atomic>

#include "lcspan/error.hpp"

namespace lcspan {

std::uint32_t Distance::value() const
{
    if (!is_finite()) throw InputError("distance is infinite");
    return hops_;
}

std::string Distance::to_string() const
{
    return is_finite() ? std::to_string(hops_) : std::string("inf");
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges))
{
    if (vertex_count >= std::numeric_limits<Vertex>::max())
        throw ResourceError("vertex count " + std::to_string(vertex_count) + " exceeds 32-bit ids");
    for (Edge& e : edges_) {
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (e.u >= vertex_count || e.v >= vertex_count)
            throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for " + std::to_string(vertex_count) + " vertices");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw InputError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    if (edges_.size() >= std::numeric_limits<EdgeId>::max())
        throw ResourceError("edge count exceeds 32-bit ids");

    offsets_.assign(vertex_count_ + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < vertex_count_; ++i) offsets_[i + 1] += offsets_[i];
    adj_vertex_.resize(2 * edges_.size());
    adj_edge_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted by (u, v), so filling in order leaves each list sorted:
    // lower neighbours arrive via their own (w, v) edges before (v, x) edges.
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        adj_vertex_[fill[e.v]] = e.u;
        adj_edge_[fill[e.v]++] = id;
    }
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        adj_vertex_[fill[e.u]] = e.v;
        adj_edge_[fill[e.u]++] = id;
    }
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const
{
    if (a >= vertex_count_ || b >= vertex_count_) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return incident_edges(a)[static_cast<std::size_t>(it - nb.begin())];
}

Graph Graph::edge_subgraph(std::span<const EdgeId> keep) const
{
    std::vector<EdgeId> ids(keep.begin(), keep.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Edge> out;
    out.reserve(ids.size());
    for (EdgeId id : ids) {
        if (id >= edges_.size()) throw InputError("edge id " + std::to_string(id) + " out of range");
        out.push_back(edges_[id]);
    }
    return Graph(vertex_count_, std::move(out));
}

std::uint64_t Graph::fingerprint() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t word) {
        for (int i = 0; i < 8; ++i) {
            h ^= (word >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    feed(vertex_count_);
    feed(edges_.size());
    for (const Edge& e : edges_) feed((static_cast<std::uint64_t>(e.u) << 32) | e.v);
    return h;
}

void BfsScratch::resize(std::size_t vertex_count)
{
    stamp_.assign(vertex_count, 0);
    depth_.assign(vertex_count, 0);
    queue_.clear();
    queue_.reserve(vertex_count);
    current_ = 0;
}

Distance BfsScratch::distance(const Graph& g, Vertex src, Vertex dst, EdgeId skip,
                              std::uint32_t max_depth)
{
    if (stamp_.size() != g.vertex_count()) resize(g.vertex_count());
    if (src == dst) return Distance(0);
    if (++current_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        current_ = 1;
    }
    queue_.clear();
    queue_.push_back(src);
    stamp_[src] = current_;
    depth_[src] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        const Vertex v = queue_[head];
        const std::uint32_t d = depth_[v];
        if (d >= max_depth) break;
        auto nb = g.neighbors(v);
        auto ids = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (ids[i] == skip) continue;
            const Vertex w = nb[i];
            if (stamp_[w] == current_) continue;
            if (w == dst) return Distance(d + 1);
            stamp_[w] = current_;
            depth_[w] = d + 1;
            queue_.push_back(w);
        }
    }
    return Distance::infinity();
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex src, std::optional<std::uint32_t> cap)
{
    if (src >= g.vertex_count())
        throw InputError("source vertex " + std::to_string(src) + " out of range");
    std::vector<Distance> dist(g.vertex_count(), Distance::infinity());
    std::vector<Vertex> queue{src};
    dist[src] = Distance(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        const std::uint32_t d = dist[v].value();
        if (cap && d >= *cap) continue;
        for (Vertex w : g.neighbors(v)) {
            if (dist[w].is_finite()) continue;
            dist[w] = Distance(d + 1);
            queue.push_back(w);
        }
    }
    return dist;
}

namespace {

void check_edge(const Graph& g, EdgeId e)
{
    if (e >= g.edge_count())
        throw InputError("edge id " + std::to_string(e) + " out of range (" +
                         std::to_string(g.edge_count()) + " edges)");
}

}  // namespace

Distance edge_cycle_length(const Graph& g, EdgeId e, std::uint32_t limit)
{
    check_edge(g, e);
    if (limit < 3) return Distance::infinity();
    BfsScratch scratch(g.vertex_count());
    const Edge& ed = g.edge(e);
    Distance d = scratch.distance(g, ed.u, ed.v, e, limit - 1);
    return d.is_finite() ? Distance(d.value() + 1) : d;
}

Distance edge_cycle_length(const Graph& g, EdgeId e)
{
    return edge_cycle_length(g, e, std::numeric_limits<std::uint32_t>::max() - 1);
}

Distance girth(const Graph& g)
{
    const auto m = static_cast<std::int64_t>(g.edge_count());
    std::atomic<std::uint32_t> best{std::numeric_limits<std::uint32_t>::max()};
#pragma omp parallel
    {
        BfsScratch scratch(g.vertex_count());
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < m; ++i) {
            const std::uint32_t bound = best.load(std::memory_order_relaxed);
            if (bound <= 3) continue;
            const Edge& ed = g.edge(static_cast<EdgeId>(i));
            // Only cycles strictly shorter than the current best matter.
            Distance d = scratch.distance(g, ed.u, ed.v, static_cast<EdgeId>(i), bound - 2);
            if (!d.is_finite()) continue;
            std::uint32_t len = d.value() + 1;
            std::uint32_t cur = best.load(std::memory_order_relaxed);
            while (len < cur && !best.compare_exchange_weak(cur, len)) {
            }
        }
    }
    const std::uint32_t b = best.load();
    return b == std::numeric_limits<std::uint32_t>::max() ? Distance::infinity() : Distance(b);
}

namespace serial {

Distance girth(const Graph& g)
{
    Distance best = Distance::infinity();
    for (EdgeId e = 0; e < g.edge_count(); ++e) best = std::min(best, edge_cycle_length(g, e));
    return best;
}

}  // namespace serial

std::vector<Vertex> shortest_path(const Graph& g, Vertex src, Vertex dst, EdgeId skip)
{
    if (src >= g.vertex_count() || dst >= g.vertex_count()) throw InputError("path endpoint out of range");
    constexpr Vertex unseen = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(g.vertex_count(), unseen);
    std::vector<Vertex> queue{src};
    parent[src] = src;
    for (std::size_t head = 0; head < queue.size() && parent[dst] == unseen; ++head) {
        const Vertex v = queue[head];
        auto nb = g.neighbors(v);
        auto ids = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (ids[i] == skip || parent[nb[i]] != unseen) continue;
            parent[nb[i]] = v;
            queue.push_back(nb[i]);
        }
    }
    if (parent[dst] == unseen) return {};
    std::vector<Vertex> path{dst};
    while (path.back() != src) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Vertex> shortest_cycle(const Graph& g)
{
    const Distance best = girth(g);
    if (!best.is_finite()) return {};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (edge_cycle_length(g, e, best.value()) != best) continue;
        return shortest_path(g, g.edge(e).u, g.edge(e).v, e);
    }
    return {};
}

BipartiteResult is_bipartite(const Graph& g)
{
    constexpr std::uint8_t unset = 2;
    std::vector<std::uint8_t> color(g.vertex_count(), unset);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (color[s] != unset) continue;
        color[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex v = queue[head];
            for (Vertex w : g.neighbors(v)) {
                if (color[w] == unset) {
                    color[w] = static_cast<std::uint8_t>(1 - color[v]);
                    queue.push_back(w);
                } else if (color[w] == color[v]) {
                    return {false, std::nullopt};
                }
            }
        }
    }
    return {true, std::move(color)};
}

}  // namespace lcspan
