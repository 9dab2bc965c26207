#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcspan/label_cover.hpp"

namespace lcspan {

struct Literal {
    std::uint32_t var = 0;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

// 3-CNF in which every variable occurs in exactly five clauses.
struct Formula3Sat5 {
    std::uint32_t var_count = 0;
    std::vector<Clause> clauses;
    std::uint64_t seed = 0;
    std::optional<std::vector<bool>> planted;

    friend bool operator==(const Formula3Sat5&, const Formula3Sat5&) = default;
};

// Throws InputError unless: n' divisible by 3, 5n'/3 clauses, distinct
// variables inside every clause, every variable in exactly 5 clauses, and
// (when present) the planted assignment satisfies every clause.
void validate(const Formula3Sat5& f);

bool satisfies(const Clause& c, const std::vector<bool>& assignment);

// Configuration model: five slots per variable, shuffled into triples, the
// whole shuffle redrawn while some triple repeats a variable. With a planted
// assignment, an unsatisfied clause gets one literal flipped to agree with it.
// Deterministic in (n_prime, seed, planted).
Formula3Sat5 gen_3sat5(std::uint32_t n_prime, std::uint64_t seed,
                       std::optional<std::vector<bool>> planted = std::nullopt,
                       std::uint32_t max_attempts = 1'000'000);

// The 7 satisfying assignments of a clause in lexicographic order of
// (value of var1, var2, var3); element t of each entry is the value of the
// clause's t-th variable.
std::array<std::array<bool, 3>, 7> satisfying_assignments(const Clause& c);

// A = clauses, B = variables, Sigma_A = 7, Sigma_B = 2 (0 = false, 1 = true).
LabelCoverInstance lc_from_3sat5(const Formula3Sat5& f);

// Clause labels are the assignment restricted to the clause (symbol 0 for a
// clause the assignment falsifies); variable labels are the assignment itself.
Labeling labeling_from_assignment(const Formula3Sat5& f, const std::vector<bool>& assignment);

// copies_a copies of A and copies_b copies of B with a copy of E between every
// pair of blocks. Vertex (copy c, v) gets index c * |side| + v.
LabelCoverInstance duplicate_sides(const LabelCoverInstance& lc, std::uint32_t copies_a,
                                   std::uint32_t copies_b);

// duplicate_sides(lc, 3, 5) on a 3SAT(5)-shaped instance (A-degree 3, B-degree 5),
// giving |A'| = |B'| = 5n' and degree 15 everywhere.
LabelCoverInstance regularize(const LabelCoverInstance& lc);

inline constexpr std::uint64_t kDefaultRepetitionBudget = 10'000'000;

// ell-fold product: vertices, superedges and symbols are ell-tuples, indexed
// row-major with the first coordinate most significant. A pair is allowed iff
// it is allowed in every coordinate. Throws ResourceError when |E|^ell exceeds
// max_superedges.
LabelCoverInstance parallel_repetition(const LabelCoverInstance& lc, std::uint32_t ell,
                                       std::uint64_t max_superedges = kDefaultRepetitionBudget);

struct LiftStage {
    enum class Kind { Duplicate, Repetition };
    Kind kind = Kind::Duplicate;
    std::uint32_t copies_a = 3;
    std::uint32_t copies_b = 5;
    std::uint32_t ell = 1;

    static LiftStage regularize() { return {Kind::Duplicate, 3, 5, 1}; }
    static LiftStage repetition(std::uint32_t ell) { return {Kind::Repetition, 1, 1, ell}; }
};

// Carries a labeling of `lc` (the pre-stage instance) through the stage.
Labeling lift_labeling(const LabelCoverInstance& lc, const Labeling& lab, const LiftStage& stage);

// Per-stage record of a pipeline run.
struct PipelineTrace {
    struct Stage {
        std::string name;
        std::uint64_t seed = 0;
        std::uint64_t a_count = 0;
        std::uint64_t b_count = 0;
        std::uint64_t sigma_a = 0;
        std::uint64_t sigma_b = 0;
        std::uint64_t superedges = 0;
        std::map<std::string, double> params;
        std::vector<std::string> notes;
    };
    std::vector<Stage> stages;

    Stage& record(std::string name, const LabelCoverInstance& lc, std::uint64_t seed = 0);
};

}  // namespace lcspan
