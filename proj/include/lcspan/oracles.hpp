#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "lcspan/graph.hpp"
#include "lcspan/label_cover.hpp"
#include "lcspan/spanner.hpp"

namespace lcspan {

// Exhaustive solvers for tiny instances. They never approximate: an instance
// beyond the budget is rejected with ResourceError stating the required size.
struct OracleBudget {
    std::uint64_t max_search_space = std::uint64_t{1} << 24;
    std::chrono::milliseconds time_cap{0};  // 0 = unlimited
};

// Reads LCSPAN_BUDGET (a positive integer) if set, else the default.
OracleBudget budget_from_env();

struct ExactValue {
    Rational value;
    Labeling witness;
    std::uint64_t search_space = 0;
    Side enumerated = Side::A;
};

// Optimum Label Cover value. Enumerates every labeling of the side with the
// smaller labeling space (A on ties) in lexicographic order and gives each
// vertex of the other side its best symbol (smallest on ties). The witness is
// the lexicographically first maximizer of (gamma_A, gamma_B), whichever side
// is enumerated. Search space = size of the enumerated side.
ExactValue lc_value_exact(const LabelCoverInstance& lc, const OracleBudget& budget = {});

struct ExactCover {
    std::size_t size = 0;
    RepCover witness;
    std::uint64_t search_space = 0;
};

// Minimum REP-cover by subsets of Min-Rep vertices in increasing size, each
// size in lexicographic order. Needs 2^n <= budget.
ExactCover min_repcover_exact(const MinRepInstance& mr, const OracleBudget& budget = {});

struct ExactSpanner {
    std::size_t size = 0;
    EdgeSubset witness;
    std::uint64_t search_space = 0;
};

// Minimum k-spanner by edge subsets in increasing size, lexicographic within a
// size. Needs 2^m <= budget and at most 64 vertices.
ExactSpanner min_spanner_exact(const Graph& g, std::uint32_t k, const OracleBudget& budget = {});

// Every edge subset of g (as a bitmask over edge ids) that is a k-spanner,
// ascending. Needs m <= 40, at most 64 vertices and 2^m <= budget.
std::vector<std::uint64_t> all_spanner_masks(const Graph& g, std::uint32_t k, const OracleBudget& budget = {});

// Shortest cycle by BFS from every vertex, closing on non-tree edges.
Distance girth_independent(const Graph& g);

namespace serial {

// Plain enumeration of all sigma_a^|A| * sigma_b^|B| labelings.
ExactValue lc_value_exact(const LabelCoverInstance& lc, const OracleBudget& budget = {});
std::vector<std::uint64_t> all_spanner_masks(const Graph& g, std::uint32_t k, const OracleBudget& budget = {});

}  // namespace serial

}  // namespace lcspan
