#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcspan/graph.hpp"

namespace lcspan {

using Symbol = std::uint32_t;

struct SymbolPair {
    Symbol alpha = 0;
    Symbol beta = 0;

    friend auto operator<=>(const SymbolPair&, const SymbolPair&) = default;
};

// Sorted, duplicate-free, nonempty list of allowed (alpha, beta) pairs.
using Relation = std::vector<SymbolPair>;

struct Superedge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t relation = 0;  // index into the instance's relation pool
};

// Exact non-negative fraction, always stored in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::uint64_t num, std::uint64_t den);

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

// Bipartite supergraph (A, B, E) with a relation per superedge. Superedges are
// kept sorted by (a, b), which makes superedge ids coincide with edge ids of
// supergraph(). Relations are interned: many superedges usually share one.
class LabelCoverInstance {
public:
    LabelCoverInstance() = default;

    // Validates every invariant (nonempty in-range relations, distinct superedges)
    // and throws InputError otherwise. Relations are normalized (sorted, deduped).
    LabelCoverInstance(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t sigma_a,
                       std::uint32_t sigma_b, std::vector<Superedge> edges,
                       std::vector<Relation> relations);

    struct ExplicitEdge {
        std::uint32_t a;
        std::uint32_t b;
        Relation relation;
    };
    // Builds the relation pool by interning identical relations.
    static LabelCoverInstance from_explicit(std::uint32_t a_count, std::uint32_t b_count,
                                            std::uint32_t sigma_a, std::uint32_t sigma_b,
                                            std::vector<ExplicitEdge> edges);

    std::uint32_t a_count() const { return a_count_; }
    std::uint32_t b_count() const { return b_count_; }
    std::uint32_t sigma_a() const { return sigma_a_; }
    std::uint32_t sigma_b() const { return sigma_b_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Superedge>& edges() const { return edges_; }
    const Superedge& edge(std::size_t id) const { return edges_[id]; }
    const Relation& relation(std::size_t edge_id) const { return relations_[edges_[edge_id].relation]; }
    const std::vector<Relation>& relation_pool() const { return relations_; }

    // Id of superedge (a, b) if present.
    std::optional<std::size_t> find_edge(std::uint32_t a, std::uint32_t b) const;

    bool allows(std::size_t edge_id, Symbol alpha, Symbol beta) const;

    // Sum over superedges of |relation|.
    std::size_t relation_size_total() const;

    // Same vertices, alphabets and relations; only the listed superedges survive.
    LabelCoverInstance keep_edges(std::span<const std::uint32_t> edge_ids) const;

    // Semantic equality: same dimensions and, per superedge, same endpoints and relation contents.
    bool operator==(const LabelCoverInstance& other) const;

private:
    std::uint32_t a_count_ = 0;
    std::uint32_t b_count_ = 0;
    std::uint32_t sigma_a_ = 1;
    std::uint32_t sigma_b_ = 1;
    std::vector<Superedge> edges_;
    std::vector<Relation> relations_;
};

struct Labeling {
    std::vector<Symbol> gamma_a;
    std::vector<Symbol> gamma_b;

    friend bool operator==(const Labeling&, const Labeling&) = default;
};

enum class Side : std::uint8_t { A = 0, B = 1 };

struct RepMember {
    Side side = Side::A;
    std::uint32_t supervertex = 0;
    Symbol symbol = 0;

    friend auto operator<=>(const RepMember&, const RepMember&) = default;
};

// Set of representatives; members sorted by (side, supervertex, symbol), duplicates collapse.
class RepCover {
public:
    RepCover() = default;
    explicit RepCover(std::vector<RepMember> members);

    void insert(RepMember m);
    bool contains(const RepMember& m) const;
    std::size_t size() const { return members_.size(); }
    const std::vector<RepMember>& members() const { return members_; }

    friend bool operator==(const RepCover&, const RepCover&) = default;

private:
    std::vector<RepMember> members_;
};

// Min-Rep graph over (A x Sigma_A) then (B x Sigma_B), each block row-major by
// (supervertex, symbol).
class MinRepInstance {
public:
    explicit MinRepInstance(LabelCoverInstance source);

    const LabelCoverInstance& source() const { return source_; }
    const Graph& graph() const { return graph_; }

    Vertex vertex_of(const RepMember& m) const;
    RepMember member_of(Vertex v) const;
    std::size_t a_block_size() const
    {
        return static_cast<std::size_t>(source_.a_count()) * source_.sigma_a();
    }

private:
    LabelCoverInstance source_;
    Graph graph_;
};

struct CoverCheck {
    bool valid = false;
    std::optional<std::uint32_t> uncovered;  // first failing superedge id
};

// Number of satisfied superedges under a labeling.
std::size_t satisfied_count(const LabelCoverInstance& lc, const Labeling& lab);

// Fraction of satisfied superedges; an instance without superedges has value 1.
Rational value(const LabelCoverInstance& lc, const Labeling& lab);

void check_labeling(const LabelCoverInstance& lc, const Labeling& lab);

Graph supergraph(const LabelCoverInstance& lc);
Distance supergirth(const LabelCoverInstance& lc);

MinRepInstance minrep_expand(const LabelCoverInstance& lc);

CoverCheck repcover_valid(const MinRepInstance& mr, const RepCover& cover);
CoverCheck repcover_valid(const LabelCoverInstance& lc, const RepCover& cover);

RepCover labeling_to_repcover(const LabelCoverInstance& lc, const Labeling& lab);

// Supervertices incident to at least one superedge.
std::size_t non_isolated_supervertices(const LabelCoverInstance& lc);

}  // namespace lcspan
