#include "lcspan/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <string>

#include "lcspan/error.hpp"

namespace lcspan {

OracleBudget budget_from_env()
{
    OracleBudget b;
    if (const char* env = std::getenv("LCSPAN_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) throw InputError("LCSPAN_BUDGET must be a positive integer");
        b.max_search_space = v;
    }
    return b;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > kSaturated / base) return kSaturated;
        r *= base;
    }
    return r;
}

std::string space_text(std::uint64_t s) { return s == kSaturated ? std::string("> 2^64") : std::to_string(s); }

void require_budget(std::uint64_t needed, const OracleBudget& budget, const char* what)
{
    if (needed > budget.max_search_space)
        throw ResourceError(std::string(what) + " needs a search space of " + space_text(needed) +
                            ", budget is " + std::to_string(budget.max_search_space));
}

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds cap)
        : enabled_(cap.count() > 0), end_(std::chrono::steady_clock::now() + cap)
    {
    }
    bool expired() const { return enabled_ && std::chrono::steady_clock::now() > end_; }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point end_;
};

void decode(std::uint64_t idx, std::uint32_t sigma, std::vector<Symbol>& out)
{
    for (std::size_t v = out.size(); v-- > 0;) {
        out[v] = static_cast<Symbol>(idx % sigma);
        idx /= sigma;
    }
}

}  // namespace

ExactValue lc_value_exact(const LabelCoverInstance& lc, const OracleBudget& budget)
{
    const std::uint64_t space_a = saturating_pow(lc.sigma_a(), lc.a_count());
    const std::uint64_t space_b = saturating_pow(lc.sigma_b(), lc.b_count());
    const bool enum_a = space_a <= space_b;
    const std::uint64_t space = enum_a ? space_a : space_b;
    require_budget(space, budget, "exact Label Cover value");

    // Orient every superedge as (enumerated vertex x, optimized vertex y).
    const std::uint32_t nx = enum_a ? lc.a_count() : lc.b_count();
    const std::uint32_t ny = enum_a ? lc.b_count() : lc.a_count();
    const std::uint32_t sx = enum_a ? lc.sigma_a() : lc.sigma_b();
    const std::uint32_t sy = enum_a ? lc.sigma_b() : lc.sigma_a();
    struct Oriented {
        std::uint32_t x, y;
        std::vector<std::uint8_t> allow;  // [label_x * sy + label_y]
    };
    std::vector<Oriented> edges;
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        Oriented o{enum_a ? e.a : e.b, enum_a ? e.b : e.a, std::vector<std::uint8_t>(std::size_t{sx} * sy, 0)};
        for (const SymbolPair& p : lc.relation(id)) {
            const Symbol lx = enum_a ? p.alpha : p.beta;
            const Symbol ly = enum_a ? p.beta : p.alpha;
            o.allow[std::size_t{lx} * sy + ly] = 1;
        }
        edges.push_back(std::move(o));
    }

    auto best_other_side = [&](const std::vector<Symbol>& labels, std::vector<std::uint32_t>& score,
                               std::vector<Symbol>* choice) {
        std::fill(score.begin(), score.end(), 0);
        for (const Oriented& o : edges) {
            const std::uint8_t* row = o.allow.data() + std::size_t{labels[o.x]} * sy;
            std::uint32_t* s = score.data() + std::size_t{o.y} * sy;
            for (std::uint32_t t = 0; t < sy; ++t) s[t] += row[t];
        }
        std::uint64_t total = 0;
        for (std::uint32_t y = 0; y < ny; ++y) {
            const std::uint32_t* s = score.data() + std::size_t{y} * sy;
            const auto it = std::max_element(s, s + sy);  // first maximum = smallest symbol
            total += *it;
            if (choice) (*choice)[y] = static_cast<Symbol>(it - s);
        }
        return total;
    };

    // Canonical witness = lexicographically first maximizer of (gamma_A, gamma_B).
    // Enumerating A, index order is that order. Enumerating B, the smallest
    // gamma_A for a given gamma_B is its per-vertex best choice, so candidates
    // compare by (that choice, index).
    struct Candidate {
        std::uint64_t total = 0;
        std::uint64_t idx = kSaturated;
        std::vector<Symbol> other;
    };
    auto better = [enum_a](const Candidate& c, const Candidate& best) {
        if (best.idx == kSaturated) return true;
        if (c.total != best.total) return c.total > best.total;
        if (!enum_a && c.other != best.other) return c.other < best.other;
        return c.idx < best.idx;
    };

    Deadline deadline(budget.time_cap);
    std::atomic<bool> timed_out{false};
    Candidate best;
#pragma omp parallel
    {
        std::vector<Symbol> labels(nx);
        std::vector<std::uint32_t> score(std::size_t{ny} * sy);
        Candidate local, cand;
        cand.other.resize(ny);
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(space); ++i) {
            if ((i & 0xfff) == 0 && deadline.expired()) timed_out = true;
            if (timed_out.load(std::memory_order_relaxed)) continue;
            decode(static_cast<std::uint64_t>(i), sx, labels);
            cand.total = best_other_side(labels, score, enum_a ? nullptr : &cand.other);
            cand.idx = static_cast<std::uint64_t>(i);
            if (better(cand, local)) local = cand;
        }
#pragma omp critical
        {
            if (local.idx != kSaturated && better(local, best)) best = std::move(local);
        }
    }
    if (timed_out) throw ResourceError("exact Label Cover value exceeded its time cap");

    const std::uint64_t best_total = best.total;
    std::vector<Symbol> labels(nx), other(ny);
    std::vector<std::uint32_t> score(std::size_t{ny} * sy);
    decode(best.idx, sx, labels);
    best_other_side(labels, score, &other);

    ExactValue out;
    out.search_space = space;
    out.enumerated = enum_a ? Side::A : Side::B;
    out.value = lc.edge_count() == 0 ? Rational(1, 1) : Rational(best_total, lc.edge_count());
    out.witness.gamma_a = enum_a ? labels : other;
    out.witness.gamma_b = enum_a ? other : labels;
    return out;
}

ExactCover min_repcover_exact(const MinRepInstance& mr, const OracleBudget& budget)
{
    const std::size_t n = mr.graph().vertex_count();
    if (n > 63) throw ResourceError("minimum REP-cover search needs 2^" + std::to_string(n) + " subsets");
    const std::uint64_t space = std::uint64_t{1} << n;
    require_budget(space, budget, "minimum REP-cover");

    const LabelCoverInstance& lc = mr.source();
    std::vector<std::vector<std::uint64_t>> options(lc.edge_count());
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        for (const SymbolPair& p : lc.relation(id))
            options[id].push_back((std::uint64_t{1} << mr.vertex_of({Side::A, e.a, p.alpha})) |
                                  (std::uint64_t{1} << mr.vertex_of({Side::B, e.b, p.beta})));
    }
    auto valid = [&](std::uint64_t set) {
        for (const auto& opts : options)
            if (std::none_of(opts.begin(), opts.end(), [set](std::uint64_t m) { return (set & m) == m; }))
                return false;
        return true;
    };

    Deadline deadline(budget.time_cap);
    std::uint64_t checked = 0;
    for (std::size_t size = 0; size <= n; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::uint64_t set = 0;
            for (std::size_t v : pick) set |= std::uint64_t{1} << v;
            if (valid(set)) {
                std::vector<RepMember> members;
                for (std::size_t v : pick) members.push_back(mr.member_of(static_cast<Vertex>(v)));
                return {size, RepCover(std::move(members)), space};
            }
            if ((++checked & 0xffff) == 0 && deadline.expired())
                throw ResourceError("minimum REP-cover exceeded its time cap");
            // Next combination in lexicographic order.
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw InputError("no valid REP-cover exists");  // unreachable: the full vertex set covers every superedge
}

namespace {

// k-hop reachability over bitmask adjacency; graphs of at most 64 vertices.
class MaskSpannerTest {
public:
    MaskSpannerTest(const Graph& g, std::uint32_t k) : g_(g), k_(k)
    {
        if (g.vertex_count() > 64) throw ResourceError("exhaustive spanner search supports at most 64 vertices");
    }

    bool is_spanner(std::uint64_t mask, std::vector<std::uint64_t>& nb) const
    {
        nb.assign(g_.vertex_count(), 0);
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if (!((mask >> e) & 1U)) continue;
            nb[g_.edge(e).u] |= std::uint64_t{1} << g_.edge(e).v;
            nb[g_.edge(e).v] |= std::uint64_t{1} << g_.edge(e).u;
        }
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if ((mask >> e) & 1U) continue;
            const Vertex src = g_.edge(e).u;
            const std::uint64_t target = std::uint64_t{1} << g_.edge(e).v;
            std::uint64_t reach = std::uint64_t{1} << src;
            std::uint64_t frontier = reach;
            bool found = false;
            for (std::uint32_t step = 0; step < k_ && frontier; ++step) {
                std::uint64_t next = 0;
                for (std::uint64_t f = frontier; f; f &= f - 1) next |= nb[static_cast<std::size_t>(std::countr_zero(f))];
                frontier = next & ~reach;
                reach |= next;
                if (reach & target) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

private:
    const Graph& g_;
    std::uint32_t k_;
};

}  // namespace

ExactSpanner min_spanner_exact(const Graph& g, std::uint32_t k, const OracleBudget& budget)
{
    const std::size_t m = g.edge_count();
    if (m > 63) throw ResourceError("minimum spanner search needs 2^" + std::to_string(m) + " subsets");
    const std::uint64_t space = std::uint64_t{1} << m;
    require_budget(space, budget, "minimum k-spanner");
    const MaskSpannerTest test(g, k);
    std::vector<std::uint64_t> nb;
    Deadline deadline(budget.time_cap);
    std::uint64_t checked = 0;
    for (std::size_t size = 0; size <= m; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::uint64_t mask = 0;
            for (std::size_t e : pick) mask |= std::uint64_t{1} << e;
            if (test.is_spanner(mask, nb)) {
                std::vector<EdgeId> ids(pick.begin(), pick.end());
                return {size, EdgeSubset{g.fingerprint(), std::move(ids)}, space};
            }
            if ((++checked & 0xffff) == 0 && deadline.expired())
                throw ResourceError("minimum k-spanner exceeded its time cap");
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw InputError("no k-spanner exists");  // unreachable: g spans itself
}

std::vector<std::uint64_t> all_spanner_masks(const Graph& g, std::uint32_t k, const OracleBudget& budget)
{
    const std::size_t m = g.edge_count();
    if (m > 40) throw ResourceError("spanner enumeration needs 2^" + std::to_string(m) + " subsets");
    const std::uint64_t space = std::uint64_t{1} << m;
    require_budget(space, budget, "spanner enumeration");
    const MaskSpannerTest test(g, k);
    std::vector<std::uint8_t> ok(space, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> nb;
#pragma omp for schedule(dynamic, 1024)
        for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(space); ++mask)
            ok[mask] = test.is_spanner(static_cast<std::uint64_t>(mask), nb) ? 1 : 0;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < space; ++mask)
        if (ok[mask]) out.push_back(mask);
    return out;
}

Distance girth_independent(const Graph& g)
{
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(g.vertex_count());
    std::vector<Vertex> parent(g.vertex_count());
    std::vector<Vertex> queue;
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[root] = 0;
        parent[root] = root;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex v = queue[head];
            if (2 * dist[v] + 1 >= best) break;
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] == unseen) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if (parent[v] != w) {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    return best == std::numeric_limits<std::uint32_t>::max() ? Distance::infinity() : Distance(best);
}

namespace serial {

ExactValue lc_value_exact(const LabelCoverInstance& lc, const OracleBudget& budget)
{
    const std::uint64_t space_a = saturating_pow(lc.sigma_a(), lc.a_count());
    const std::uint64_t space_b = saturating_pow(lc.sigma_b(), lc.b_count());
    const std::uint64_t space =
        (space_b != 0 && space_a > kSaturated / space_b) ? kSaturated : space_a * space_b;
    require_budget(space, budget, "exact Label Cover value (full enumeration)");
    Labeling lab{std::vector<Symbol>(lc.a_count()), std::vector<Symbol>(lc.b_count())};
    ExactValue out;
    out.search_space = space;
    std::size_t best = 0;
    bool have = false;
    for (std::uint64_t ia = 0; ia < space_a; ++ia) {
        decode(ia, lc.sigma_a(), lab.gamma_a);
        for (std::uint64_t ib = 0; ib < space_b; ++ib) {
            decode(ib, lc.sigma_b(), lab.gamma_b);
            const std::size_t sat = satisfied_count(lc, lab);
            if (!have || sat > best) {
                best = sat;
                out.witness = lab;
                have = true;
            }
        }
    }
    out.value = lc.edge_count() == 0 ? Rational(1, 1) : Rational(best, lc.edge_count());
    return out;
}

std::vector<std::uint64_t> all_spanner_masks(const Graph& g, std::uint32_t k, const OracleBudget& budget)
{
    const std::size_t m = g.edge_count();
    if (m > 40) throw ResourceError("spanner enumeration needs 2^" + std::to_string(m) + " subsets");
    const std::uint64_t space = std::uint64_t{1} << m;
    require_budget(space, budget, "spanner enumeration");
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < space; ++mask) {
        std::vector<EdgeId> ids;
        for (EdgeId e = 0; e < m; ++e)
            if ((mask >> e) & 1U) ids.push_back(e);
        if (lcspan::serial::verify_spanner(g, EdgeSubset{g.fingerprint(), std::move(ids)}, k).ok)
            out.push_back(mask);
    }
    return out;
}

}  // namespace serial

}  // namespace lcspan
