#include "lcspan/label_cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "lcspan/error.hpp"

namespace lcspan {

Rational::Rational(std::uint64_t num, std::uint64_t den)
{
    if (den == 0) throw InputError("rational with zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y)
{
    const unsigned __int128 l = static_cast<unsigned __int128>(x.num_) * y.den_;
    const unsigned __int128 r = static_cast<unsigned __int128>(y.num_) * x.den_;
    return l <=> r;
}

Rational operator*(const Rational& x, const Rational& y)
{
    const std::uint64_t g1 = std::gcd(x.num_, y.den_);
    const std::uint64_t g2 = std::gcd(y.num_, x.den_);
    return Rational((x.num_ / g1) * (y.num_ / g2), (x.den_ / g2) * (y.den_ / g1));
}

LabelCoverInstance::LabelCoverInstance(std::uint32_t a_count, std::uint32_t b_count,
                                       std::uint32_t sigma_a, std::uint32_t sigma_b,
                                       std::vector<Superedge> edges, std::vector<Relation> relations)
    : a_count_(a_count),
      b_count_(b_count),
      sigma_a_(sigma_a),
      sigma_b_(sigma_b),
      edges_(std::move(edges)),
      relations_(std::move(relations))
{
    if (sigma_a == 0 || sigma_b == 0) throw InputError("alphabet sizes must be at least 1");
    for (Relation& r : relations_) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        for (const SymbolPair& p : r)
            if (p.alpha >= sigma_a || p.beta >= sigma_b)
                throw InputError("relation pair (" + std::to_string(p.alpha) + "," +
                                 std::to_string(p.beta) + ") outside the alphabets");
    }
    for (const Superedge& e : edges_) {
        if (e.a >= a_count || e.b >= b_count)
            throw InputError("superedge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                             ") out of range");
        if (e.relation >= relations_.size()) throw InputError("superedge refers to a missing relation");
        if (relations_[e.relation].empty())
            throw InputError("superedge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                             ") has an empty relation");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Superedge& x, const Superedge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b)
            throw InputError("duplicate superedge (" + std::to_string(edges_[i].a) + "," +
                             std::to_string(edges_[i].b) + ")");
}

LabelCoverInstance LabelCoverInstance::from_explicit(std::uint32_t a_count, std::uint32_t b_count,
                                                     std::uint32_t sigma_a, std::uint32_t sigma_b,
                                                     std::vector<ExplicitEdge> edges)
{
    std::map<Relation, std::uint32_t> index;
    std::vector<Relation> pool;
    std::vector<Superedge> out;
    out.reserve(edges.size());
    for (ExplicitEdge& e : edges) {
        std::sort(e.relation.begin(), e.relation.end());
        e.relation.erase(std::unique(e.relation.begin(), e.relation.end()), e.relation.end());
        auto [it, inserted] = index.try_emplace(e.relation, static_cast<std::uint32_t>(pool.size()));
        if (inserted) pool.push_back(std::move(e.relation));
        out.push_back({e.a, e.b, it->second});
    }
    return LabelCoverInstance(a_count, b_count, sigma_a, sigma_b, std::move(out), std::move(pool));
}

std::optional<std::size_t> LabelCoverInstance::find_edge(std::uint32_t a, std::uint32_t b) const
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                               [](const Superedge& e, const std::pair<std::uint32_t, std::uint32_t>& key) {
                                   return std::tie(e.a, e.b) < std::tie(key.first, key.second);
                               });
    if (it == edges_.end() || it->a != a || it->b != b) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

bool LabelCoverInstance::allows(std::size_t edge_id, Symbol alpha, Symbol beta) const
{
    const Relation& r = relation(edge_id);
    return std::binary_search(r.begin(), r.end(), SymbolPair{alpha, beta});
}

std::size_t LabelCoverInstance::relation_size_total() const
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) total += relation(i).size();
    return total;
}

LabelCoverInstance LabelCoverInstance::keep_edges(std::span<const std::uint32_t> edge_ids) const
{
    std::vector<Superedge> kept;
    kept.reserve(edge_ids.size());
    for (std::uint32_t id : edge_ids) {
        if (id >= edges_.size()) throw InputError("superedge id " + std::to_string(id) + " out of range");
        kept.push_back(edges_[id]);
    }
    return LabelCoverInstance(a_count_, b_count_, sigma_a_, sigma_b_, std::move(kept), relations_);
}

bool LabelCoverInstance::operator==(const LabelCoverInstance& other) const
{
    if (a_count_ != other.a_count_ || b_count_ != other.b_count_ || sigma_a_ != other.sigma_a_ ||
        sigma_b_ != other.sigma_b_ || edges_.size() != other.edges_.size())
        return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].a != other.edges_[i].a || edges_[i].b != other.edges_[i].b) return false;
        if (relation(i) != other.relation(i)) return false;
    }
    return true;
}

RepCover::RepCover(std::vector<RepMember> members) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

void RepCover::insert(RepMember m)
{
    auto it = std::lower_bound(members_.begin(), members_.end(), m);
    if (it == members_.end() || *it != m) members_.insert(it, m);
}

bool RepCover::contains(const RepMember& m) const
{
    return std::binary_search(members_.begin(), members_.end(), m);
}

namespace {

Graph build_minrep_graph(const LabelCoverInstance& lc)
{
    const std::size_t a_block = static_cast<std::size_t>(lc.a_count()) * lc.sigma_a();
    const std::size_t total = a_block + static_cast<std::size_t>(lc.b_count()) * lc.sigma_b();
    std::vector<Edge> edges;
    edges.reserve(lc.relation_size_total());
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        for (const SymbolPair& p : lc.relation(id)) {
            const std::size_t u = static_cast<std::size_t>(e.a) * lc.sigma_a() + p.alpha;
            const std::size_t w = a_block + static_cast<std::size_t>(e.b) * lc.sigma_b() + p.beta;
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(w)});
        }
    }
    return Graph(total, std::move(edges));
}

}  // namespace

MinRepInstance::MinRepInstance(LabelCoverInstance source)
    : source_(std::move(source)), graph_(build_minrep_graph(source_))
{
}

Vertex MinRepInstance::vertex_of(const RepMember& m) const
{
    if (m.side == Side::A) {
        if (m.supervertex >= source_.a_count() || m.symbol >= source_.sigma_a())
            throw InputError("A-side representative out of range");
        return static_cast<Vertex>(static_cast<std::size_t>(m.supervertex) * source_.sigma_a() + m.symbol);
    }
    if (m.supervertex >= source_.b_count() || m.symbol >= source_.sigma_b())
        throw InputError("B-side representative out of range");
    return static_cast<Vertex>(a_block_size() +
                               static_cast<std::size_t>(m.supervertex) * source_.sigma_b() + m.symbol);
}

RepMember MinRepInstance::member_of(Vertex v) const
{
    if (v < a_block_size())
        return {Side::A, static_cast<std::uint32_t>(v / source_.sigma_a()), v % source_.sigma_a()};
    const std::size_t r = v - a_block_size();
    if (r >= static_cast<std::size_t>(source_.b_count()) * source_.sigma_b())
        throw InputError("Min-Rep vertex " + std::to_string(v) + " out of range");
    return {Side::B, static_cast<std::uint32_t>(r / source_.sigma_b()),
            static_cast<Symbol>(r % source_.sigma_b())};
}

void check_labeling(const LabelCoverInstance& lc, const Labeling& lab)
{
    if (lab.gamma_a.size() != lc.a_count() || lab.gamma_b.size() != lc.b_count())
        throw InputError("labeling covers " + std::to_string(lab.gamma_a.size()) + "+" +
                         std::to_string(lab.gamma_b.size()) + " vertices, instance has " +
                         std::to_string(lc.a_count()) + "+" + std::to_string(lc.b_count()));
    for (Symbol s : lab.gamma_a)
        if (s >= lc.sigma_a()) throw InputError("A-side label " + std::to_string(s) + " out of range");
    for (Symbol s : lab.gamma_b)
        if (s >= lc.sigma_b()) throw InputError("B-side label " + std::to_string(s) + " out of range");
}

std::size_t satisfied_count(const LabelCoverInstance& lc, const Labeling& lab)
{
    check_labeling(lc, lab);
    std::size_t sat = 0;
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        if (lc.allows(id, lab.gamma_a[e.a], lab.gamma_b[e.b])) ++sat;
    }
    return sat;
}

Rational value(const LabelCoverInstance& lc, const Labeling& lab)
{
    const std::size_t sat = satisfied_count(lc, lab);
    if (lc.edge_count() == 0) return Rational(1, 1);
    return Rational(sat, lc.edge_count());
}

Graph supergraph(const LabelCoverInstance& lc)
{
    std::vector<Edge> edges;
    edges.reserve(lc.edge_count());
    for (const Superedge& e : lc.edges()) edges.push_back({e.a, lc.a_count() + e.b});
    return Graph(static_cast<std::size_t>(lc.a_count()) + lc.b_count(), std::move(edges));
}

Distance supergirth(const LabelCoverInstance& lc) { return girth(supergraph(lc)); }

MinRepInstance minrep_expand(const LabelCoverInstance& lc) { return MinRepInstance(lc); }

CoverCheck repcover_valid(const LabelCoverInstance& lc, const RepCover& cover)
{
    // Per-supervertex symbol membership, flattened.
    std::vector<std::uint8_t> in_a(static_cast<std::size_t>(lc.a_count()) * lc.sigma_a(), 0);
    std::vector<std::uint8_t> in_b(static_cast<std::size_t>(lc.b_count()) * lc.sigma_b(), 0);
    for (const RepMember& m : cover.members()) {
        if (m.side == Side::A) {
            if (m.supervertex >= lc.a_count() || m.symbol >= lc.sigma_a())
                throw InputError("A-side representative out of range");
            in_a[static_cast<std::size_t>(m.supervertex) * lc.sigma_a() + m.symbol] = 1;
        } else {
            if (m.supervertex >= lc.b_count() || m.symbol >= lc.sigma_b())
                throw InputError("B-side representative out of range");
            in_b[static_cast<std::size_t>(m.supervertex) * lc.sigma_b() + m.symbol] = 1;
        }
    }
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        const std::size_t base_a = static_cast<std::size_t>(e.a) * lc.sigma_a();
        const std::size_t base_b = static_cast<std::size_t>(e.b) * lc.sigma_b();
        bool covered = false;
        for (const SymbolPair& p : lc.relation(id)) {
            if (in_a[base_a + p.alpha] && in_b[base_b + p.beta]) {
                covered = true;
                break;
            }
        }
        if (!covered) return {false, static_cast<std::uint32_t>(id)};
    }
    return {true, std::nullopt};
}

CoverCheck repcover_valid(const MinRepInstance& mr, const RepCover& cover)
{
    return repcover_valid(mr.source(), cover);
}

RepCover labeling_to_repcover(const LabelCoverInstance& lc, const Labeling& lab)
{
    check_labeling(lc, lab);
    std::vector<RepMember> members;
    members.reserve(lab.gamma_a.size() + lab.gamma_b.size());
    for (std::uint32_t a = 0; a < lab.gamma_a.size(); ++a) members.push_back({Side::A, a, lab.gamma_a[a]});
    for (std::uint32_t b = 0; b < lab.gamma_b.size(); ++b) members.push_back({Side::B, b, lab.gamma_b[b]});
    return RepCover(std::move(members));
}

std::size_t non_isolated_supervertices(const LabelCoverInstance& lc)
{
    std::vector<std::uint8_t> touched(static_cast<std::size_t>(lc.a_count()) + lc.b_count(), 0);
    for (const Superedge& e : lc.edges()) {
        touched[e.a] = 1;
        touched[lc.a_count() + e.b] = 1;
    }
    return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), 1));
}

}  // namespace lcspan
