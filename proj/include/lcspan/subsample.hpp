#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcspan/label_cover.hpp"

namespace lcspan {

struct SampleParams {
    double alpha = 1.0;
    std::uint32_t k = 3;
    std::uint64_t seed = 0;
    bool clamp_p = true;
    // Degree d used in p_alpha; defaults to the maximum supergraph degree.
    std::optional<std::uint32_t> degree;
};

void validate(const SampleParams& params);

struct SampleProbability {
    double p = 0.0;
    double unclamped = 0.0;
    bool clamped = false;
};

// p = alpha * log2(sigma_a) / d, clamped to 1 when clamp is set.
// Throws InputError for sigma_a < 2, d < 1, alpha <= 0, or p > 1 without clamp.
SampleProbability sample_probability(double alpha, std::uint32_t sigma_a, std::uint32_t d, bool clamp = true);

// Degree in p_alpha for this instance: the override if present, else the maximum supergraph degree.
std::uint32_t sampling_degree(const LabelCoverInstance& lc, const SampleParams& params);

SampleProbability sample_probability(const LabelCoverInstance& lc, const SampleParams& params);

// Decision for superedge `edge` under `seed`; depends on nothing else.
bool keep_edge(std::uint64_t seed, std::uint64_t edge, double p);

// Keeps each superedge independently with probability p_alpha. Relations untouched.
LabelCoverInstance subsample(const LabelCoverInstance& lc, const SampleParams& params);

// Superedge ids lying on a cycle of length <= k of the supergraph, ascending.
std::vector<std::uint32_t> bad_edges(const LabelCoverInstance& lc, std::uint32_t k);

// lc minus bad_edges(lc, k), removed in one pass; the result has supergirth > k.
LabelCoverInstance strip_bad_edges(const LabelCoverInstance& lc, std::uint32_t k);

struct DegreeSummary {
    std::uint32_t min = 0;
    std::uint32_t max = 0;
    double mean = 0.0;
};

struct DegreeStats {
    DegreeSummary a;
    DegreeSummary b;
    DegreeSummary all;
};

DegreeStats degree_stats(const LabelCoverInstance& lc);

// Evidence for one subsample + strip run.
struct SampleStats {
    SampleParams params;
    SampleProbability probability;
    std::uint32_t degree_used = 0;
    std::uint64_t edges_before = 0;
    std::uint64_t edges_sampled = 0;
    std::uint64_t bad_edge_count = 0;
    std::uint64_t edges_after = 0;
    DegreeStats degrees_sampled;
    DegreeStats degrees_after;
    Distance girth_after;
};

// Runs subsample followed by strip_bad_edges(k) and records every count.
SampleStats sample_and_strip(const LabelCoverInstance& lc, const SampleParams& params,
                             LabelCoverInstance* sampled_out = nullptr,
                             LabelCoverInstance* stripped_out = nullptr);

struct MonteCarloEstimate {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased sample variance
    double std_error = 0.0;  // sqrt(variance / trials)
};

// Trial t samples with seed stream_seed(params.seed, t).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

MonteCarloEstimate summarize(std::span<const double> samples);

// Mean number of superedges that survive sampling and are satisfied by lab.
MonteCarloEstimate montecarlo_satisfied(const LabelCoverInstance& lc, const Labeling& lab,
                                        const SampleParams& params, std::uint64_t trials);

// Mean number of superedges that survive sampling.
MonteCarloEstimate montecarlo_kept_edges(const LabelCoverInstance& lc, const SampleParams& params,
                                         std::uint64_t trials);

struct DegreeBand {
    std::uint64_t vertex_trials = 0;
    std::uint64_t outside = 0;
    double fraction() const
    {
        return vertex_trials == 0 ? 0.0 : static_cast<double>(outside) / static_cast<double>(vertex_trials);
    }
};

// Counts (vertex, trial) pairs whose sampled degree falls outside [lo, hi].
DegreeBand montecarlo_degree_band(const LabelCoverInstance& lc, const SampleParams& params,
                                  std::uint64_t trials, double lo, double hi);

struct CycleFrequency {
    std::uint32_t edge = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double frequency() const
    {
        return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
    }
};

// For each listed superedge: fraction of trials in which, conditioned on the
// edge being kept, it lies on a cycle of length <= params.k of the sample.
std::vector<CycleFrequency> montecarlo_edge_cycle_frequency(const LabelCoverInstance& lc,
                                                            const SampleParams& params,
                                                            std::span<const std::uint32_t> edges,
                                                            std::uint64_t trials);

// Union bound on that frequency: 2 (alpha log2 sigma_a)^(k-1) / d.
double edge_cycle_bound(double alpha, std::uint32_t sigma_a, std::uint32_t d, std::uint32_t k);

namespace serial {

std::vector<std::uint32_t> bad_edges(const LabelCoverInstance& lc, std::uint32_t k);
MonteCarloEstimate montecarlo_satisfied(const LabelCoverInstance& lc, const Labeling& lab,
                                        const SampleParams& params, std::uint64_t trials);

}  // namespace serial

}  // namespace lcspan
