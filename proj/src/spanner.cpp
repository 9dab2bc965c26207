#include "lcspan/spanner.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "lcspan/error.hpp"

namespace lcspan {

EdgeSubset EdgeSubset::of(const Graph& g, std::vector<EdgeId> ids)
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!ids.empty() && ids.back() >= g.edge_count())
        throw InputError("edge id " + std::to_string(ids.back()) + " out of range for the host graph");
    return {g.fingerprint(), std::move(ids)};
}

EdgeSubset EdgeSubset::all_edges(const Graph& g)
{
    std::vector<EdgeId> ids(g.edge_count());
    for (EdgeId i = 0; i < ids.size(); ++i) ids[i] = i;
    return {g.fingerprint(), std::move(ids)};
}

bool EdgeSubset::contains(EdgeId e) const { return std::binary_search(members.begin(), members.end(), e); }

std::vector<std::uint8_t> EdgeSubset::mask(std::size_t host_edges) const
{
    std::vector<std::uint8_t> m(host_edges, 0);
    for (EdgeId e : members) m.at(e) = 1;
    return m;
}

void check_host(const Graph& g, const EdgeSubset& h)
{
    if (h.host != g.fingerprint()) throw InputError("edge subset was taken from a different host graph");
    if (!std::is_sorted(h.members.begin(), h.members.end()) ||
        std::adjacent_find(h.members.begin(), h.members.end()) != h.members.end())
        throw InputError("edge subset ids must be sorted and unique");
    if (!h.members.empty() && h.members.back() >= g.edge_count())
        throw InputError("edge subset lists id " + std::to_string(h.members.back()) + " beyond the host's " +
                         std::to_string(g.edge_count()) + " edges");
}

SpannerCheck verify_spanner(const Graph& g, const EdgeSubset& h, std::uint32_t k)
{
    check_host(g, h);
    const auto in_h = h.mask(g.edge_count());
    const Graph hg = g.edge_subgraph(h.members);
    constexpr EdgeId none = std::numeric_limits<EdgeId>::max();
    std::atomic<EdgeId> first{none};
    const auto m = static_cast<std::int64_t>(g.edge_count());
#pragma omp parallel
    {
        BfsScratch scratch(g.vertex_count());
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < m; ++i) {
            const auto e = static_cast<EdgeId>(i);
            if (in_h[e] || e >= first.load(std::memory_order_relaxed)) continue;
            const Edge& ed = g.edge(e);
            if (scratch.distance(hg, ed.u, ed.v, BfsScratch::no_edge, k).is_finite()) continue;
            EdgeId cur = first.load(std::memory_order_relaxed);
            while (e < cur && !first.compare_exchange_weak(cur, e)) {
            }
        }
    }
    const EdgeId w = first.load();
    if (w == none) return {true, std::nullopt};
    return {false, w};
}

namespace serial {

SpannerCheck verify_spanner(const Graph& g, const EdgeSubset& h, std::uint32_t k)
{
    check_host(g, h);
    const Graph hg = g.edge_subgraph(h.members);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const auto d = bfs_distances(hg, ed.u, k);
        if (!(d[ed.v] <= Distance(k))) return {false, e};
    }
    return {true, std::nullopt};
}

}  // namespace serial

EdgeSubset greedy_spanner(const Graph& g, std::uint32_t k)
{
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    std::vector<std::uint32_t> stamp(g.vertex_count(), 0), depth(g.vertex_count(), 0);
    std::vector<Vertex> queue;
    std::uint32_t current = 0;
    auto within = [&](Vertex src, Vertex dst) {
        ++current;
        queue.assign(1, src);
        stamp[src] = current;
        depth[src] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex v = queue[head];
            if (depth[v] >= k) break;
            for (Vertex w : adj[v]) {
                if (stamp[w] == current) continue;
                if (w == dst) return true;
                stamp[w] = current;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
        return false;
    };
    std::vector<EdgeId> kept;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (within(ed.u, ed.v)) continue;
        kept.push_back(e);
        adj[ed.u].push_back(ed.v);
        adj[ed.v].push_back(ed.u);
    }
    return {g.fingerprint(), std::move(kept)};
}

const char* family_name(EdgeFamily f)
{
    switch (f) {
    case EdgeFamily::E: return "E";
    case EdgeFamily::EM: return "E_M";
    case EdgeFamily::EsA: return "E_sA";
    case EdgeFamily::EtB: return "E_tB";
    case EdgeFamily::EG: return "E_G";
    }
    return "?";
}

std::uint64_t default_copies(std::uint64_t n, std::uint64_t n_tilde)
{
    if (n_tilde == 0) throw InputError("supergraph has no vertices");
    const auto sq = static_cast<unsigned __int128>(n) * n;
    const auto x = (sq + n_tilde - 1) / n_tilde;
    if (x > std::numeric_limits<std::uint64_t>::max()) throw ResourceError("copy count overflows 64 bits");
    return static_cast<std::uint64_t>(x);
}

namespace {

std::string describe_cycle(const LabelCoverInstance& lc, const std::vector<Vertex>& cycle)
{
    std::string out;
    for (Vertex v : cycle) {
        if (!out.empty()) out += " - ";
        out += v < lc.a_count() ? "A" + std::to_string(v) : "B" + std::to_string(v - lc.a_count());
    }
    return out;
}

}  // namespace

SpannerInstance::SpannerInstance(MinRepInstance source, std::uint32_t k, SpannerBuildOptions options)
    : source_(std::move(source)), k_(k), k_a_((k - 1) / 2), k_b_(k / 2), x_(0), default_x_(false)
{
    if (k < 3) throw InputError("stretch k = " + std::to_string(k) + " must be at least 3");
    const LabelCoverInstance& lc = label_cover();
    const std::uint64_t a = lc.a_count(), b = lc.b_count();
    if (a + b == 0) throw InputError("supergraph has no vertices");

    const Graph sg = supergraph(lc);
    const Distance sgirth = girth(sg);
    if (sgirth < Distance(k + 2)) {
        const std::string msg = "supergirth " + sgirth.to_string() + " is below k + 2 = " + std::to_string(k + 2) +
                                "; short supercycle: " + describe_cycle(lc, shortest_cycle(sg));
        if (!options.unsafe_supergirth) throw InputError(msg);
        notes_.push_back("unsafe: " + msg);
    }

    x_ = options.x_override ? *options.x_override : default_copies(n(), n_tilde());
    default_x_ = !options.x_override || *options.x_override == default_copies(n(), n_tilde());
    if (x_ == 0) throw InputError("copy count x must be at least 1");
    if (!default_x_)
        notes_.push_back("x = " + std::to_string(x_) + " overrides ceil(n^2/n_tilde) = " +
                         std::to_string(default_copies(n(), n_tilde())) + "; size bounds assume the default");

    const auto per_copy = static_cast<unsigned __int128>(a * (k_a_ - 1) + b * (k_b_ - 1)) +
                          a * lc.sigma_a() + b * lc.sigma_b() + lc.edge_count();
    const auto edge_total = per_copy * x_ + source_.graph().edge_count();
    const auto vertex_total = static_cast<unsigned __int128>(a * k_a_ + b * k_b_) * x_ + n();
    if (edge_total > options.max_edges || vertex_total >= std::numeric_limits<Vertex>::max())
        throw ResourceError("gadget graph needs " + std::to_string(static_cast<std::uint64_t>(edge_total)) +
                            " edges, budget allows " + std::to_string(options.max_edges));

    std::vector<Edge> edges(source_.graph().edges());
    edges.reserve(static_cast<std::size_t>(edge_total));
    for (std::uint64_t p = 0; p < x_; ++p) {
        for (std::uint32_t i = 0; i < a; ++i) {
            for (std::uint32_t l = 1; l < k_a_; ++l) edges.push_back({s_vertex(p, i, l), s_vertex(p, i, l + 1)});
            for (Symbol s = 0; s < lc.sigma_a(); ++s)
                edges.push_back({s_vertex(p, i, 1), source_.vertex_of({Side::A, i, s})});
        }
        for (std::uint32_t j = 0; j < b; ++j) {
            for (std::uint32_t l = 1; l < k_b_; ++l) edges.push_back({t_vertex(p, j, l), t_vertex(p, j, l + 1)});
            for (Symbol s = 0; s < lc.sigma_b(); ++s)
                edges.push_back({source_.vertex_of({Side::B, j, s}), t_vertex(p, j, 1)});
        }
        for (const Superedge& e : lc.edges()) edges.push_back({s_vertex(p, e.a, k_a_), t_vertex(p, e.b, k_b_)});
    }
    graph_ = Graph(static_cast<std::size_t>(vertex_total), std::move(edges));

    family_.resize(graph_.edge_count());
    for (EdgeId id = 0; id < graph_.edge_count(); ++id) {
        const RoleKind ru = role(graph_.edge(id).u).kind;
        const RoleKind rv = role(graph_.edge(id).v).kind;
        // Min-Rep ids precede S ids, which precede T ids, so u's kind <= v's kind.
        if (rv == RoleKind::MinRepB && ru == RoleKind::MinRepA)
            family_[id] = EdgeFamily::E;
        else if (ru == rv)
            family_[id] = EdgeFamily::EM;
        else if (ru == RoleKind::MinRepA)
            family_[id] = EdgeFamily::EsA;
        else if (ru == RoleKind::MinRepB)
            family_[id] = EdgeFamily::EtB;
        else
            family_[id] = EdgeFamily::EG;
    }

    for (std::uint32_t i = 0; i < a; ++i) {
        for (Symbol s = 0; s < lc.sigma_a(); ++s)
            hat_e_.push_back(*graph_.find_edge(s_vertex(0, i, 1), source_.vertex_of({Side::A, i, s})));
        for (std::uint64_t p = 0; p < x_; ++p) hat_e_.push_back(*graph_.find_edge(s_vertex(p, i, 1), u_choice(i)));
    }
    for (std::uint32_t j = 0; j < b; ++j) {
        for (Symbol s = 0; s < lc.sigma_b(); ++s)
            hat_e_.push_back(*graph_.find_edge(source_.vertex_of({Side::B, j, s}), t_vertex(0, j, 1)));
        for (std::uint64_t p = 0; p < x_; ++p) hat_e_.push_back(*graph_.find_edge(w_choice(j), t_vertex(p, j, 1)));
    }
    std::sort(hat_e_.begin(), hat_e_.end());
    hat_e_.erase(std::unique(hat_e_.begin(), hat_e_.end()), hat_e_.end());
}

Vertex SpannerInstance::s_vertex(std::uint64_t copy, std::uint32_t i, std::uint32_t level) const
{
    return static_cast<Vertex>(n() + (copy * label_cover().a_count() + i) * k_a_ + (level - 1));
}

Vertex SpannerInstance::t_vertex(std::uint64_t copy, std::uint32_t j, std::uint32_t level) const
{
    return static_cast<Vertex>(n() + x_ * label_cover().a_count() * k_a_ +
                               (copy * label_cover().b_count() + j) * k_b_ + (level - 1));
}

Vertex SpannerInstance::u_choice(std::uint32_t i) const { return source_.vertex_of({Side::A, i, 0}); }
Vertex SpannerInstance::w_choice(std::uint32_t j) const { return source_.vertex_of({Side::B, j, 0}); }

VertexRole SpannerInstance::role(Vertex v) const
{
    if (v < n()) {
        const RepMember m = source_.member_of(v);
        return {m.side == Side::A ? RoleKind::MinRepA : RoleKind::MinRepB, m.supervertex, m.symbol, 0};
    }
    std::uint64_t r = v - n();
    const std::uint64_t a = label_cover().a_count(), b = label_cover().b_count();
    const std::uint64_t s_total = x_ * a * k_a_;
    if (r < s_total) {
        const std::uint64_t idx = r / k_a_;
        return {RoleKind::S, static_cast<std::uint32_t>(idx % a), static_cast<std::uint32_t>(r % k_a_ + 1),
                static_cast<std::uint32_t>(idx / a)};
    }
    r -= s_total;
    if (r >= x_ * b * k_b_) throw InputError("gadget vertex " + std::to_string(v) + " out of range");
    const std::uint64_t idx = r / k_b_;
    return {RoleKind::T, static_cast<std::uint32_t>(idx % b), static_cast<std::uint32_t>(r % k_b_ + 1),
            static_cast<std::uint32_t>(idx / b)};
}

std::vector<EdgeId> SpannerInstance::family_members(EdgeFamily f) const
{
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < family_.size(); ++id)
        if (family_[id] == f) out.push_back(id);
    return out;
}

std::pair<std::size_t, std::uint64_t> SpannerInstance::gadget_superedge(EdgeId e) const
{
    if (e >= family_.size() || family_[e] != EdgeFamily::EG)
        throw InputError("edge " + std::to_string(e) + " is not a supergraph-copy edge");
    const VertexRole s = role(graph_.edge(e).u);
    const VertexRole t = role(graph_.edge(e).v);
    return {*label_cover().find_edge(s.supervertex, t.supervertex), s.copy};
}

SpannerInstance build_spanner_instance(const MinRepInstance& mr, std::uint32_t k, SpannerBuildOptions options)
{
    return SpannerInstance(mr, k, options);
}

std::optional<std::vector<Vertex>> canonical_span_check(const SpannerInstance& si, std::span<const std::uint8_t> in_h,
                                                        EdgeId e)
{
    const auto [sid, p] = si.gadget_superedge(e);
    const Graph& g = si.graph();
    const LabelCoverInstance& lc = si.label_cover();
    const Superedge& se = lc.edge(sid);
    auto has = [&](Vertex x, Vertex y) {
        auto id = g.find_edge(x, y);
        return id && in_h[*id];
    };

    std::vector<Vertex> path;
    for (std::uint32_t l = si.k_a(); l >= 1; --l) {
        if (l < si.k_a() && !has(si.s_vertex(p, se.a, l + 1), si.s_vertex(p, se.a, l))) return std::nullopt;
        path.push_back(si.s_vertex(p, se.a, l));
    }
    for (std::uint32_t l = 1; l < si.k_b(); ++l)
        if (!has(si.t_vertex(p, se.b, l), si.t_vertex(p, se.b, l + 1))) return std::nullopt;

    const Vertex s1 = si.s_vertex(p, se.a, 1);
    const Vertex t1 = si.t_vertex(p, se.b, 1);
    for (const SymbolPair& pair : lc.relation(sid)) {
        const Vertex u = si.source().vertex_of({Side::A, se.a, pair.alpha});
        const Vertex w = si.source().vertex_of({Side::B, se.b, pair.beta});
        if (!has(s1, u) || !has(u, w) || !has(w, t1)) continue;
        path.push_back(u);
        path.push_back(w);
        for (std::uint32_t l = 1; l <= si.k_b(); ++l) path.push_back(si.t_vertex(p, se.b, l));
        return path;
    }
    return std::nullopt;
}

std::optional<std::vector<Vertex>> canonical_span_check(const SpannerInstance& si, const EdgeSubset& h, EdgeId e)
{
    check_host(si.graph(), h);
    const auto in_h = h.mask(si.graph().edge_count());
    return canonical_span_check(si, in_h, e);
}

EdgeSubset make_proper(const SpannerInstance& si, const EdgeSubset& h)
{
    const Graph& g = si.graph();
    const SpannerCheck check = verify_spanner(g, h, si.k());
    if (!check.ok)
        throw InputError("not a " + std::to_string(si.k()) + "-spanner: edge " + std::to_string(*check.witness) +
                         " is not spanned");
    std::vector<std::uint8_t> out = h.mask(g.edge_count());
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const EdgeFamily f = si.family(id);
        if (f == EdgeFamily::EG) out[id] = 0;
        if (f == EdgeFamily::E || f == EdgeFamily::EM) out[id] = 1;
    }
    for (EdgeId id : si.hat_e()) out[id] = 1;

    const LabelCoverInstance& lc = si.label_cover();
    for (EdgeId id : h.members) {
        if (si.family(id) != EdgeFamily::EG) continue;
        const auto [sid, p] = si.gadget_superedge(id);
        const Superedge& se = lc.edge(sid);
        const SymbolPair first = lc.relation(sid).front();
        const Vertex u = si.source().vertex_of({Side::A, se.a, first.alpha});
        const Vertex w = si.source().vertex_of({Side::B, se.b, first.beta});
        out[*g.find_edge(si.s_vertex(p, se.a, 1), u)] = 1;
        out[*g.find_edge(w, si.t_vertex(p, se.b, 1))] = 1;
    }
    std::vector<EdgeId> ids;
    for (EdgeId id = 0; id < out.size(); ++id)
        if (out[id]) ids.push_back(id);
    return {g.fingerprint(), std::move(ids)};
}

CoverExtraction extract_repcover(const SpannerInstance& si, const EdgeSubset& h)
{
    CoverExtraction result;
    result.proper = make_proper(si, h);
    const Graph& g = si.graph();
    std::vector<std::uint64_t> size(si.x(), 0);
    auto attachment = [&](EdgeId id) -> std::optional<std::pair<std::uint64_t, RepMember>> {
        const Edge& e = g.edge(id);
        if (si.family(id) == EdgeFamily::EsA) {
            const VertexRole tower = si.role(e.v);
            return std::pair{std::uint64_t{tower.copy}, si.source().member_of(e.u)};
        }
        if (si.family(id) == EdgeFamily::EtB) {
            const VertexRole tower = si.role(e.v);
            return std::pair{std::uint64_t{tower.copy}, si.source().member_of(e.u)};
        }
        return std::nullopt;
    };
    for (EdgeId id : result.proper.members)
        if (auto a = attachment(id)) ++size[a->first];
    result.copy = static_cast<std::uint64_t>(std::min_element(size.begin(), size.end()) - size.begin());
    std::vector<RepMember> members;
    for (EdgeId id : result.proper.members)
        if (auto a = attachment(id); a && a->first == result.copy) members.push_back(a->second);
    result.cover = RepCover(std::move(members));
    return result;
}

RepCover repcover_from_spanner(const SpannerInstance& si, const EdgeSubset& h)
{
    return extract_repcover(si, h).cover;
}

EdgeSubset spanner_from_repcover(const SpannerInstance& si, const RepCover& cover)
{
    const CoverCheck check = repcover_valid(si.source(), cover);
    if (!check.valid) {
        const Superedge& se = si.label_cover().edge(*check.uncovered);
        throw InputError("REP-cover leaves superedge " + std::to_string(*check.uncovered) + " (A" +
                         std::to_string(se.a) + ", B" + std::to_string(se.b) + ") uncovered");
    }
    const Graph& g = si.graph();
    std::vector<std::uint8_t> in(g.edge_count(), 0);
    for (EdgeId id = 0; id < g.edge_count(); ++id)
        if (si.family(id) == EdgeFamily::E || si.family(id) == EdgeFamily::EM) in[id] = 1;
    for (EdgeId id : si.hat_e()) in[id] = 1;
    for (const RepMember& m : cover.members()) {
        const Vertex v = si.source().vertex_of(m);
        for (std::uint64_t p = 0; p < si.x(); ++p) {
            const Vertex tower = m.side == Side::A ? si.s_vertex(p, m.supervertex, 1) : si.t_vertex(p, m.supervertex, 1);
            in[*g.find_edge(v, tower)] = 1;
        }
    }
    std::vector<EdgeId> ids;
    for (EdgeId id = 0; id < in.size(); ++id)
        if (in[id]) ids.push_back(id);
    return {g.fingerprint(), std::move(ids)};
}

}  // namespace lcspan
