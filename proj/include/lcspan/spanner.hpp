#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcspan/graph.hpp"
#include "lcspan/label_cover.hpp"

namespace lcspan {

// Subgraph of a host graph given by edge ids. `host` is the host's fingerprint.
struct EdgeSubset {
    std::uint64_t host = 0;
    std::vector<EdgeId> members;  // sorted, unique

    static EdgeSubset of(const Graph& g, std::vector<EdgeId> ids);
    static EdgeSubset all_edges(const Graph& g);

    std::size_t size() const { return members.size(); }
    bool contains(EdgeId e) const;
    // Membership bitmap over the host's edge ids.
    std::vector<std::uint8_t> mask(std::size_t host_edges) const;

    friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;
};

// Throws InputError when `h` was not taken from `g` or lists an invalid id.
void check_host(const Graph& g, const EdgeSubset& h);

struct SpannerCheck {
    bool ok = false;
    std::optional<EdgeId> witness;  // lowest-id edge of g not spanned within k hops
};

// True iff every edge (u, v) of g has dist_h(u, v) <= k. For unweighted graphs
// this is equivalent to dist_h <= k * dist_g over all vertex pairs.
SpannerCheck verify_spanner(const Graph& g, const EdgeSubset& h, std::uint32_t k);

// Classical greedy: scan edges in id order, keep an edge iff its endpoints are
// more than k hops apart in the edges kept so far.
EdgeSubset greedy_spanner(const Graph& g, std::uint32_t k);

enum class RoleKind : std::uint8_t { MinRepA, MinRepB, S, T };

// For Min-Rep vertices `index` is the symbol and `copy` is unused; for tower
// vertices `index` is the 1-based level and `copy` the 0-based copy p.
struct VertexRole {
    RoleKind kind = RoleKind::MinRepA;
    std::uint32_t supervertex = 0;
    std::uint32_t index = 0;
    std::uint32_t copy = 0;

    friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

enum class EdgeFamily : std::uint8_t { E, EM, EsA, EtB, EG };

const char* family_name(EdgeFamily f);

struct SpannerBuildOptions {
    std::optional<std::uint64_t> x_override;
    bool unsafe_supergirth = false;  // downgrade the supergirth check to a recorded note
    std::uint64_t max_edges = 20'000'000;
};

// ceil(n^2 / n_tilde)
std::uint64_t default_copies(std::uint64_t n, std::uint64_t n_tilde);

// Gadget graph G' for the Min-Rep to basic k-spanner reduction.
//
// Vertex layout: the n Min-Rep vertices keep their Min-Rep ids; then the S
// towers, index n + (p*|A| + i)*k_a + (level-1); then the T towers, index
// n + x*|A|*k_a + (p*|B| + j)*k_b + (level-1). Level 1 is attached to the
// Min-Rep group, level k_a (k_b) carries the copy-p supergraph edges.
//
// The hat-E edges use u_i = (i, 0) and w_j = (j, 0).
class SpannerInstance {
public:
    SpannerInstance(MinRepInstance source, std::uint32_t k, SpannerBuildOptions options = {});

    const MinRepInstance& source() const { return source_; }
    const LabelCoverInstance& label_cover() const { return source_.source(); }
    const Graph& graph() const { return graph_; }

    std::uint32_t k() const { return k_; }
    std::uint32_t k_a() const { return k_a_; }
    std::uint32_t k_b() const { return k_b_; }
    std::uint64_t x() const { return x_; }
    bool uses_default_x() const { return default_x_; }
    std::uint64_t n() const { return source_.graph().vertex_count(); }
    std::uint64_t n_tilde() const
    {
        return static_cast<std::uint64_t>(label_cover().a_count()) + label_cover().b_count();
    }

    Vertex s_vertex(std::uint64_t copy, std::uint32_t i, std::uint32_t level) const;
    Vertex t_vertex(std::uint64_t copy, std::uint32_t j, std::uint32_t level) const;
    Vertex u_choice(std::uint32_t i) const;
    Vertex w_choice(std::uint32_t j) const;

    VertexRole role(Vertex v) const;
    EdgeFamily family(EdgeId e) const { return family_[e]; }
    const std::vector<EdgeFamily>& families() const { return family_; }
    std::vector<EdgeId> family_members(EdgeFamily f) const;

    // Superedge id and copy p of an E_G edge.
    std::pair<std::size_t, std::uint64_t> gadget_superedge(EdgeId e) const;

    const std::vector<EdgeId>& hat_e() const { return hat_e_; }

    // Non-fatal conditions recorded at build time (unsafe supergirth, x override).
    const std::vector<std::string>& notes() const { return notes_; }

private:
    MinRepInstance source_;
    std::uint32_t k_;
    std::uint32_t k_a_;
    std::uint32_t k_b_;
    std::uint64_t x_;
    bool default_x_;
    Graph graph_;
    std::vector<EdgeFamily> family_;
    std::vector<EdgeId> hat_e_;
    std::vector<std::string> notes_;
};

// Checks preconditions (k >= 3, supergirth >= k + 2, size budget) and builds G'.
SpannerInstance build_spanner_instance(const MinRepInstance& mr, std::uint32_t k,
                                       SpannerBuildOptions options = {});

// A canonical path for E_G edge e inside h (vertex list from s^p_{i,k_a} to
// t^p_{j,k_b}, k edges), or nullopt. Throws InputError if e is not an E_G edge.
std::optional<std::vector<Vertex>> canonical_span_check(const SpannerInstance& si, const EdgeSubset& h,
                                                        EdgeId e);
// Same, against a membership bitmap of the gadget's edges.
std::optional<std::vector<Vertex>> canonical_span_check(const SpannerInstance& si,
                                                        std::span<const std::uint8_t> in_h, EdgeId e);

// (h \ E_G) + E + E_M + hat-E, plus for every dropped E_G edge in h the two
// tower-attachment edges of the lexicographically first Min-Rep edge realizing
// its superedge. Throws InputError unless h is a k-spanner of G'.
EdgeSubset make_proper(const SpannerInstance& si, const EdgeSubset& h);

struct CoverExtraction {
    RepCover cover;
    std::uint64_t copy = 0;  // p whose U^p was smallest (lowest p on ties)
    EdgeSubset proper;
};

CoverExtraction extract_repcover(const SpannerInstance& si, const EdgeSubset& h);

// Smallest U^p over the copies of make_proper(h).
RepCover repcover_from_spanner(const SpannerInstance& si, const EdgeSubset& h);

// Tower attachments of the cover's members in every copy, plus E + E_M + hat-E.
// Throws InputError (naming the uncovered superedge) when the cover is invalid.
EdgeSubset spanner_from_repcover(const SpannerInstance& si, const RepCover& cover);

namespace serial {

SpannerCheck verify_spanner(const Graph& g, const EdgeSubset& h, std::uint32_t k);

}  // namespace serial

}  // namespace lcspan
