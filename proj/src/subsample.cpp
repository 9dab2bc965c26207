#include "lcspan/subsample.hpp"

#include <algorithm>
#include <cmath>

#include "lcspan/error.hpp"
#include "lcspan/rng.hpp"

namespace lcspan {

void validate(const SampleParams& params)
{
    if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
        throw InputError("alpha must be a positive finite number");
    if (params.k < 3) throw InputError("cycle threshold k must be at least 3");
    if (params.degree && *params.degree == 0) throw InputError("degree override must be at least 1");
}

SampleProbability sample_probability(double alpha, std::uint32_t sigma_a, std::uint32_t d, bool clamp)
{
    if (!(alpha > 0.0)) throw InputError("alpha must be positive");
    if (sigma_a < 2) throw InputError("sigma_A = " + std::to_string(sigma_a) + " < 2 makes log2(sigma_A) <= 0");
    if (d < 1) throw InputError("degree must be at least 1");
    SampleProbability out;
    out.unclamped = alpha * std::log2(static_cast<double>(sigma_a)) / static_cast<double>(d);
    out.p = out.unclamped;
    if (out.unclamped > 1.0) {
        if (!clamp)
            throw InputError("p_alpha = " + std::to_string(out.unclamped) + " exceeds 1 and clamping is off");
        out.p = 1.0;
        out.clamped = true;
    }
    return out;
}

std::uint32_t sampling_degree(const LabelCoverInstance& lc, const SampleParams& params)
{
    if (params.degree) return *params.degree;
    std::vector<std::uint32_t> deg(static_cast<std::size_t>(lc.a_count()) + lc.b_count(), 0);
    for (const Superedge& e : lc.edges()) {
        ++deg[e.a];
        ++deg[lc.a_count() + e.b];
    }
    const std::uint32_t d = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    return std::max<std::uint32_t>(d, 1);
}

SampleProbability sample_probability(const LabelCoverInstance& lc, const SampleParams& params)
{
    validate(params);
    return sample_probability(params.alpha, lc.sigma_a(), sampling_degree(lc, params), params.clamp_p);
}

bool keep_edge(std::uint64_t seed, std::uint64_t edge, double p)
{
    if (p >= 1.0) return true;
    return to_unit(stream_seed(seed, edge)) < p;
}

LabelCoverInstance subsample(const LabelCoverInstance& lc, const SampleParams& params)
{
    const double p = sample_probability(lc, params).p;
    std::vector<std::uint32_t> kept;
    for (std::uint32_t id = 0; id < lc.edge_count(); ++id)
        if (keep_edge(params.seed, id, p)) kept.push_back(id);
    return lc.keep_edges(kept);
}

std::vector<std::uint32_t> bad_edges(const LabelCoverInstance& lc, std::uint32_t k)
{
    const Graph g = supergraph(lc);
    const auto m = static_cast<std::int64_t>(g.edge_count());
    std::vector<std::uint8_t> bad(g.edge_count(), 0);
    if (k >= 3) {
#pragma omp parallel
        {
            BfsScratch scratch(g.vertex_count());
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t i = 0; i < m; ++i) {
                const Edge& e = g.edge(static_cast<EdgeId>(i));
                bad[i] = scratch.distance(g, e.u, e.v, static_cast<EdgeId>(i), k - 1).is_finite() ? 1 : 0;
            }
        }
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < bad.size(); ++i)
        if (bad[i]) out.push_back(i);
    return out;
}

LabelCoverInstance strip_bad_edges(const LabelCoverInstance& lc, std::uint32_t k)
{
    const auto bad = bad_edges(lc, k);
    std::vector<std::uint32_t> keep;
    keep.reserve(lc.edge_count() - bad.size());
    std::size_t j = 0;
    for (std::uint32_t id = 0; id < lc.edge_count(); ++id) {
        if (j < bad.size() && bad[j] == id) {
            ++j;
            continue;
        }
        keep.push_back(id);
    }
    return lc.keep_edges(keep);
}

namespace {

DegreeSummary summarize_degrees(const std::vector<std::uint32_t>& deg)
{
    DegreeSummary s;
    if (deg.empty()) return s;
    s.min = *std::min_element(deg.begin(), deg.end());
    s.max = *std::max_element(deg.begin(), deg.end());
    double sum = 0;
    for (auto d : deg) sum += d;
    s.mean = sum / static_cast<double>(deg.size());
    return s;
}

}  // namespace

DegreeStats degree_stats(const LabelCoverInstance& lc)
{
    std::vector<std::uint32_t> da(lc.a_count(), 0), db(lc.b_count(), 0);
    for (const Superedge& e : lc.edges()) {
        ++da[e.a];
        ++db[e.b];
    }
    std::vector<std::uint32_t> all(da);
    all.insert(all.end(), db.begin(), db.end());
    return {summarize_degrees(da), summarize_degrees(db), summarize_degrees(all)};
}

SampleStats sample_and_strip(const LabelCoverInstance& lc, const SampleParams& params,
                             LabelCoverInstance* sampled_out, LabelCoverInstance* stripped_out)
{
    SampleStats s;
    s.params = params;
    s.probability = sample_probability(lc, params);
    s.degree_used = sampling_degree(lc, params);
    s.edges_before = lc.edge_count();
    LabelCoverInstance sampled = subsample(lc, params);
    s.edges_sampled = sampled.edge_count();
    s.degrees_sampled = degree_stats(sampled);
    s.bad_edge_count = bad_edges(sampled, params.k).size();
    LabelCoverInstance stripped = strip_bad_edges(sampled, params.k);
    s.edges_after = stripped.edge_count();
    s.degrees_after = degree_stats(stripped);
    s.girth_after = supergirth(stripped);
    if (sampled_out) *sampled_out = std::move(sampled);
    if (stripped_out) *stripped_out = std::move(stripped);
    return s;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial)
{
    return stream_seed(stage_seed(master, "montecarlo"), trial);
}

MonteCarloEstimate summarize(std::span<const double> samples)
{
    MonteCarloEstimate est;
    est.trials = samples.size();
    if (samples.empty()) return est;
    double sum = 0;
    for (double x : samples) sum += x;
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double sq = 0;
        for (double x : samples) sq += (x - est.mean) * (x - est.mean);
        est.variance = sq / static_cast<double>(samples.size() - 1);
    }
    est.std_error = std::sqrt(est.variance / static_cast<double>(samples.size()));
    return est;
}

namespace {

std::vector<std::uint8_t> satisfied_mask(const LabelCoverInstance& lc, const Labeling& lab)
{
    check_labeling(lc, lab);
    std::vector<std::uint8_t> mask(lc.edge_count(), 0);
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        mask[id] = lc.allows(id, lab.gamma_a[e.a], lab.gamma_b[e.b]) ? 1 : 0;
    }
    return mask;
}

double count_kept(std::span<const std::uint8_t> mask, std::uint64_t seed, double p)
{
    std::uint64_t count = 0;
    for (std::size_t id = 0; id < mask.size(); ++id)
        if (mask[id] && keep_edge(seed, id, p)) ++count;
    return static_cast<double>(count);
}

MonteCarloEstimate montecarlo_masked(std::span<const std::uint8_t> mask, std::uint64_t master, double p,
                                     std::uint64_t trials)
{
    if (trials == 0) throw InputError("trials must be at least 1");
    std::vector<double> samples(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
        samples[t] = count_kept(mask, trial_seed(master, static_cast<std::uint64_t>(t)), p);
    return summarize(samples);
}

}  // namespace

MonteCarloEstimate montecarlo_satisfied(const LabelCoverInstance& lc, const Labeling& lab,
                                        const SampleParams& params, std::uint64_t trials)
{
    const double p = sample_probability(lc, params).p;
    return montecarlo_masked(satisfied_mask(lc, lab), params.seed, p, trials);
}

MonteCarloEstimate montecarlo_kept_edges(const LabelCoverInstance& lc, const SampleParams& params,
                                         std::uint64_t trials)
{
    const double p = sample_probability(lc, params).p;
    std::vector<std::uint8_t> all(lc.edge_count(), 1);
    return montecarlo_masked(all, params.seed, p, trials);
}

DegreeBand montecarlo_degree_band(const LabelCoverInstance& lc, const SampleParams& params,
                                  std::uint64_t trials, double lo, double hi)
{
    if (trials == 0) throw InputError("trials must be at least 1");
    const double p = sample_probability(lc, params).p;
    const std::size_t n = static_cast<std::size_t>(lc.a_count()) + lc.b_count();
    std::uint64_t outside = 0;
#pragma omp parallel
    {
        std::vector<std::uint32_t> deg(n);
#pragma omp for schedule(static) reduction(+ : outside)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
            std::fill(deg.begin(), deg.end(), 0);
            const std::uint64_t seed = trial_seed(params.seed, static_cast<std::uint64_t>(t));
            for (std::uint32_t id = 0; id < lc.edge_count(); ++id) {
                if (!keep_edge(seed, id, p)) continue;
                ++deg[lc.edge(id).a];
                ++deg[lc.a_count() + lc.edge(id).b];
            }
            for (std::uint32_t d : deg)
                if (d < lo || d > hi) ++outside;
        }
    }
    return {trials * n, outside};
}

std::vector<CycleFrequency> montecarlo_edge_cycle_frequency(const LabelCoverInstance& lc,
                                                            const SampleParams& params,
                                                            std::span<const std::uint32_t> edges,
                                                            std::uint64_t trials)
{
    if (trials == 0) throw InputError("trials must be at least 1");
    const double p = sample_probability(lc, params).p;
    const Graph g = supergraph(lc);
    for (std::uint32_t e : edges)
        if (e >= g.edge_count()) throw InputError("superedge id " + std::to_string(e) + " out of range");

    std::vector<std::vector<std::uint8_t>> hit(edges.size(), std::vector<std::uint8_t>(trials, 0));
#pragma omp parallel
    {
        BfsScratch scratch(g.vertex_count());
        std::vector<EdgeId> kept;
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
            const std::uint64_t seed = trial_seed(params.seed, static_cast<std::uint64_t>(t));
            kept.clear();
            for (EdgeId id = 0; id < g.edge_count(); ++id)
                if (keep_edge(seed, id, p)) kept.push_back(id);
            for (std::size_t i = 0; i < edges.size(); ++i) {
                // Conditioning on the edge being kept: add it if the draw dropped it.
                std::vector<EdgeId> with = kept;
                if (!std::binary_search(with.begin(), with.end(), edges[i]))
                    with.insert(std::lower_bound(with.begin(), with.end(), edges[i]), edges[i]);
                const Graph sample = g.edge_subgraph(with);
                const Edge& ed = g.edge(edges[i]);
                const EdgeId local = *sample.find_edge(ed.u, ed.v);
                hit[i][t] = scratch.distance(sample, ed.u, ed.v, local, params.k - 1).is_finite() ? 1 : 0;
            }
        }
    }
    std::vector<CycleFrequency> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        CycleFrequency f{edges[i], trials, 0};
        for (auto h : hit[i]) f.hits += h;
        out.push_back(f);
    }
    return out;
}

double edge_cycle_bound(double alpha, std::uint32_t sigma_a, std::uint32_t d, std::uint32_t k)
{
    const double x = alpha * std::log2(static_cast<double>(sigma_a));
    return 2.0 * std::pow(x, static_cast<double>(k) - 1.0) / static_cast<double>(d);
}

namespace serial {

std::vector<std::uint32_t> bad_edges(const LabelCoverInstance& lc, std::uint32_t k)
{
    const Graph g = supergraph(lc);
    std::vector<std::uint32_t> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (edge_cycle_length(g, e) <= Distance(k)) out.push_back(e);
    return out;
}

MonteCarloEstimate montecarlo_satisfied(const LabelCoverInstance& lc, const Labeling& lab,
                                        const SampleParams& params, std::uint64_t trials)
{
    if (trials == 0) throw InputError("trials must be at least 1");
    const double p = sample_probability(lc, params).p;
    const auto mask = satisfied_mask(lc, lab);
    std::vector<double> samples;
    for (std::uint64_t t = 0; t < trials; ++t) samples.push_back(count_kept(mask, trial_seed(params.seed, t), p));
    return summarize(samples);
}

}  // namespace serial

}  // namespace lcspan
