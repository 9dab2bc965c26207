#pragma once

// Independent ground truth for the test suite. Nothing here calls into the
// library's algorithms; only its value types are used to build inputs.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "lcspan/graph.hpp"
#include "lcspan/label_cover.hpp"
#include "lcspan/rng.hpp"

namespace testing {

using lcspan::Edge;
using lcspan::Graph;
using lcspan::LabelCoverInstance;
using lcspan::Relation;
using lcspan::SplitMix64;
using lcspan::Symbol;
using lcspan::SymbolPair;

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

inline Graph cycle(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        e.push_back({static_cast<lcspan::Vertex>(i), static_cast<lcspan::Vertex>((i + 1) % n)});
    return Graph(n, e);
}

inline Graph complete(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.push_back({static_cast<lcspan::Vertex>(i), static_cast<lcspan::Vertex>(j)});
    return Graph(n, e);
}

inline Graph path(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({static_cast<lcspan::Vertex>(i), static_cast<lcspan::Vertex>(i + 1)});
    return Graph(n, e);
}

inline Graph petersen()
{
    std::vector<Edge> e;
    for (lcspan::Vertex i = 0; i < 5; ++i) {
        e.push_back({i, (i + 1) % 5});
        e.push_back({i, i + 5});
        e.push_back({i + 5, (i + 2) % 5 + 5});
    }
    return Graph(10, e);
}

inline Graph random_graph(SplitMix64& rng, std::size_t n, double p)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) e.push_back({static_cast<lcspan::Vertex>(i), static_cast<lcspan::Vertex>(j)});
    return Graph(n, e);
}

inline Graph random_tree(SplitMix64& rng, std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 1; i < n; ++i)
        e.push_back({static_cast<lcspan::Vertex>(rng.below(i)), static_cast<lcspan::Vertex>(i)});
    return Graph(n, e);
}

// All-pairs hop counts by Floyd-Warshall over an explicit edge list.
inline std::vector<std::vector<std::uint32_t>> floyd(std::size_t n, const std::vector<Edge>& edges)
{
    std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const Edge& e : edges) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][m] != kInf && d[m][j] != kInf && d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
    return d;
}

// Shortest simple cycle by exhaustive DFS over simple paths (tiny graphs only).
inline std::uint32_t girth_by_cycle_enumeration(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<lcspan::Vertex>> adj(n);
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::uint32_t best = kInf;
    std::vector<char> on_path(n, 0);
    // Cycles rooted at their smallest vertex.
    std::function<void(lcspan::Vertex, lcspan::Vertex, std::uint32_t)> dfs = [&](lcspan::Vertex root, lcspan::Vertex v,
                                                                                 std::uint32_t len) {
        if (len + 1 >= best) return;
        for (lcspan::Vertex w : adj[v]) {
            if (w == root && len >= 2) best = std::min(best, len + 1);
            if (w <= root || on_path[w]) continue;
            on_path[w] = 1;
            dfs(root, w, len + 1);
            on_path[w] = 0;
        }
    };
    for (lcspan::Vertex r = 0; r < n; ++r) {
        on_path[r] = 1;
        dfs(r, r, 0);
        on_path[r] = 0;
    }
    return best;
}

// Eq. (1) literally: for every pair, dist_h <= k * dist_g.
inline bool all_pairs_spanner(const Graph& g, const std::vector<lcspan::EdgeId>& h, std::uint32_t k)
{
    std::vector<Edge> sub;
    for (auto e : h) sub.push_back(g.edge(e));
    const auto dg = floyd(g.vertex_count(), g.edges());
    const auto dh = floyd(g.vertex_count(), sub);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
            if (dg[i][j] == kInf) continue;
            if (dh[i][j] == kInf || dh[i][j] > static_cast<std::uint64_t>(k) * dg[i][j]) return false;
        }
    return true;
}

inline std::vector<lcspan::EdgeId> mask_ids(std::uint64_t mask, std::size_t m)
{
    std::vector<lcspan::EdgeId> ids;
    for (std::size_t e = 0; e < m; ++e)
        if ((mask >> e) & 1U) ids.push_back(static_cast<lcspan::EdgeId>(e));
    return ids;
}

// Minimum spanner size by checking every subset with the all-pairs criterion.
inline std::size_t min_spanner_by_floyd(const Graph& g, std::uint32_t k)
{
    std::size_t best = g.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.edge_count()); ++mask) {
        const auto ids = mask_ids(mask, g.edge_count());
        if (ids.size() < best && all_pairs_spanner(g, ids, k)) best = ids.size();
    }
    return best;
}

struct TinyEdge {
    std::uint32_t a, b;
    Relation rel;
};

inline LabelCoverInstance make_lc(std::uint32_t na, std::uint32_t nb, std::uint32_t sa, std::uint32_t sb,
                                  const std::vector<TinyEdge>& edges)
{
    std::vector<LabelCoverInstance::ExplicitEdge> ex;
    for (const auto& e : edges) ex.push_back({e.a, e.b, e.rel});
    return LabelCoverInstance::from_explicit(na, nb, sa, sb, ex);
}

inline Relation equality(std::uint32_t s)
{
    Relation r;
    for (Symbol i = 0; i < s; ++i) r.push_back({i, i});
    return r;
}

inline Relation all_pairs(std::uint32_t sa, std::uint32_t sb)
{
    Relation r;
    for (Symbol i = 0; i < sa; ++i)
        for (Symbol j = 0; j < sb; ++j) r.push_back({i, j});
    return r;
}

// |A| = |B| = 2, binary alphabets, a 4-cycle with three equalities and one inequality.
inline LabelCoverInstance xor_odd_4cycle()
{
    return make_lc(2, 2, 2, 2,
                   {{0, 0, equality(2)}, {0, 1, equality(2)}, {1, 0, equality(2)}, {1, 1, {{0, 1}, {1, 0}}}});
}

inline bool relation_has(const Relation& r, Symbol a, Symbol b)
{
    return std::find(r.begin(), r.end(), SymbolPair{a, b}) != r.end();
}

inline std::size_t count_satisfied(const LabelCoverInstance& lc, const std::vector<Symbol>& ga,
                                   const std::vector<Symbol>& gb)
{
    std::size_t s = 0;
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const auto& e = lc.edge(id);
        s += relation_has(lc.relation(id), ga[e.a], gb[e.b]) ? 1 : 0;
    }
    return s;
}

// Calls fn on every assignment in lexicographic order (position 0 most significant).
inline void for_each_assignment(std::size_t len, std::uint32_t sigma, const std::function<void(const std::vector<Symbol>&)>& fn)
{
    std::vector<Symbol> cur(len, 0);
    while (true) {
        fn(cur);
        std::size_t i = len;
        while (i > 0 && cur[i - 1] + 1 == sigma) cur[--i] = 0;
        if (i == 0) return;
        ++cur[i - 1];
    }
}

// Maximum number of satisfied superedges by full enumeration of both sides.
inline std::size_t brute_opt(const LabelCoverInstance& lc)
{
    std::size_t best = 0;
    for_each_assignment(lc.a_count(), lc.sigma_a(), [&](const std::vector<Symbol>& ga) {
        for_each_assignment(lc.b_count(), lc.sigma_b(), [&](const std::vector<Symbol>& gb) {
            best = std::max(best, count_satisfied(lc, ga, gb));
        });
    });
    return best;
}

// Optimum satisfied count: enumerate one side completely, give every vertex
// of the other side its best symbol. Enumerates whichever side is smaller.
inline std::size_t best_response_opt(const LabelCoverInstance& lc)
{
    auto space = [](std::uint32_t sigma, std::uint32_t count) {
        double s = 1;
        for (std::uint32_t i = 0; i < count; ++i) s *= sigma;
        return s;
    };
    const bool enum_a = space(lc.sigma_a(), lc.a_count()) <= space(lc.sigma_b(), lc.b_count());
    const std::uint32_t n_enum = enum_a ? lc.a_count() : lc.b_count();
    const std::uint32_t s_enum = enum_a ? lc.sigma_a() : lc.sigma_b();
    const std::uint32_t n_free = enum_a ? lc.b_count() : lc.a_count();
    const std::uint32_t s_free = enum_a ? lc.sigma_b() : lc.sigma_a();
    std::size_t best = 0;
    std::vector<std::size_t> tally(std::size_t{n_free} * s_free);
    for_each_assignment(n_enum, s_enum, [&](const std::vector<Symbol>& fixed) {
        std::fill(tally.begin(), tally.end(), 0);
        for (std::size_t id = 0; id < lc.edge_count(); ++id) {
            const auto& e = lc.edge(id);
            const std::uint32_t fv = enum_a ? e.a : e.b;
            const std::uint32_t ov = enum_a ? e.b : e.a;
            for (const auto& p : lc.relation(id)) {
                const Symbol mine = enum_a ? p.alpha : p.beta;
                const Symbol theirs = enum_a ? p.beta : p.alpha;
                if (mine == fixed[fv]) ++tally[std::size_t{ov} * s_free + theirs];
            }
        }
        std::size_t total = 0;
        for (std::uint32_t v = 0; v < n_free; ++v)
            total += *std::max_element(tally.begin() + std::size_t{v} * s_free, tally.begin() + std::size_t{v + 1} * s_free);
        best = std::max(best, total);
    });
    return best;
}

// Random instance with |A| <= max_side, |B| <= max_side, alphabets <= max_sigma.
inline LabelCoverInstance random_tiny_lc(SplitMix64& rng, std::uint32_t max_side, std::uint32_t max_sigma,
                                         double edge_p = 0.6)
{
    const auto na = static_cast<std::uint32_t>(1 + rng.below(max_side));
    const auto nb = static_cast<std::uint32_t>(1 + rng.below(max_side));
    const auto sa = static_cast<std::uint32_t>(1 + rng.below(max_sigma));
    const auto sb = static_cast<std::uint32_t>(1 + rng.below(max_sigma));
    std::vector<TinyEdge> edges;
    for (std::uint32_t a = 0; a < na; ++a)
        for (std::uint32_t b = 0; b < nb; ++b) {
            if (rng.uniform() >= edge_p) continue;
            Relation r;
            for (Symbol x = 0; x < sa; ++x)
                for (Symbol y = 0; y < sb; ++y)
                    if (rng.uniform() < 0.4) r.push_back({x, y});
            if (r.empty()) r.push_back({static_cast<Symbol>(rng.below(sa)), static_cast<Symbol>(rng.below(sb))});
            edges.push_back({a, b, r});
        }
    return make_lc(na, nb, sa, sb, edges);
}

// Minimum REP-cover by enumerating subsets of (side, vertex, symbol) triples.
inline std::size_t brute_min_cover(const LabelCoverInstance& lc)
{
    const std::size_t na = std::size_t{lc.a_count()} * lc.sigma_a();
    const std::size_t n = na + std::size_t{lc.b_count()} * lc.sigma_b();
    std::size_t best = n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (size >= best) continue;
        bool ok = true;
        for (std::size_t id = 0; id < lc.edge_count() && ok; ++id) {
            const auto& e = lc.edge(id);
            bool covered = false;
            for (const auto& p : lc.relation(id)) {
                const std::size_t u = e.a * lc.sigma_a() + p.alpha;
                const std::size_t w = na + e.b * lc.sigma_b() + p.beta;
                if (((mask >> u) & 1U) && ((mask >> w) & 1U)) covered = true;
            }
            ok = covered;
        }
        if (ok) best = size;
    }
    return best;
}

// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("lcspan_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace testing
