// Serial reference versus OpenMP kernel for every parallel hot loop.

#include <benchmark/benchmark.h>

#include "lcspan/constructions.hpp"
#include "lcspan/graph.hpp"
#include "lcspan/oracles.hpp"
#include "lcspan/parallel.hpp"
#include "lcspan/rng.hpp"
#include "lcspan/spanner.hpp"
#include "lcspan/subsample.hpp"

using namespace lcspan;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

const LabelCoverInstance& sampled_instance()
{
    static const LabelCoverInstance lc = [] {
        SampleParams sp;
        sp.alpha = 2.0;
        sp.seed = 1;
        return subsample(regularize(lc_from_3sat5(gen_3sat5(30, 1))), sp);
    }();
    return lc;
}

const Graph& girth_graph()
{
    static const Graph g = random_graph(2000, 0.002, 2);
    return g;
}

struct SpannerCase {
    Graph g;
    EdgeSubset h;
};

const SpannerCase& spanner_case()
{
    static const SpannerCase c = [] {
        Graph g = random_graph(3000, 0.004, 3);
        EdgeSubset h = greedy_spanner(g, 3);
        return SpannerCase{std::move(g), std::move(h)};
    }();
    return c;
}

LabelCoverInstance value_instance()
{
    SplitMix64 rng(4);
    std::vector<LabelCoverInstance::ExplicitEdge> edges;
    for (std::uint32_t a = 0; a < 6; ++a)
        for (std::uint32_t b = 0; b < 5; ++b) {
            Relation r;
            for (Symbol x = 0; x < 4; ++x)
                for (Symbol y = 0; y < 3; ++y)
                    if (rng.uniform() < 0.3) r.push_back({x, y});
            if (r.empty()) r.push_back({0, 0});
            edges.push_back({a, b, r});
        }
    return LabelCoverInstance::from_explicit(6, 5, 4, 3, std::move(edges));
}

// Arg 0 selects the serial reference, any other value the OpenMP kernel with that many threads.
void configure(benchmark::State& state) { set_num_threads(static_cast<int>(state.range(0))); }

void BM_girth(benchmark::State& state)
{
    configure(state);
    for (auto _ : state) {
        const Distance d = state.range(0) == 0 ? serial::girth(girth_graph()) : girth(girth_graph());
        benchmark::DoNotOptimize(d);
    }
}

void BM_bad_edges(benchmark::State& state)
{
    configure(state);
    for (auto _ : state) {
        auto bad = state.range(0) == 0 ? serial::bad_edges(sampled_instance(), 6) : bad_edges(sampled_instance(), 6);
        benchmark::DoNotOptimize(bad);
    }
}

void BM_verify_spanner(benchmark::State& state)
{
    configure(state);
    const auto& c = spanner_case();
    for (auto _ : state) {
        const auto r = state.range(0) == 0 ? serial::verify_spanner(c.g, c.h, 3) : verify_spanner(c.g, c.h, 3);
        benchmark::DoNotOptimize(r);
    }
}

void BM_montecarlo(benchmark::State& state)
{
    configure(state);
    const auto& lc = sampled_instance();
    const Labeling lab{std::vector<Symbol>(lc.a_count(), 0), std::vector<Symbol>(lc.b_count(), 1)};
    SampleParams sp;
    sp.alpha = 1.0;
    sp.seed = 5;
    for (auto _ : state) {
        const auto r = state.range(0) == 0 ? serial::montecarlo_satisfied(lc, lab, sp, 2000)
                                           : montecarlo_satisfied(lc, lab, sp, 2000);
        benchmark::DoNotOptimize(r);
    }
}

void BM_lc_value_exact(benchmark::State& state)
{
    configure(state);
    const auto lc = value_instance();
    for (auto _ : state) {
        const auto r = state.range(0) == 0 ? serial::lc_value_exact(lc) : lc_value_exact(lc);
        benchmark::DoNotOptimize(r);
    }
}

void BM_all_spanner_masks(benchmark::State& state)
{
    configure(state);
    const Graph g = random_graph(9, 0.55, 6);
    for (auto _ : state) {
        const auto r = state.range(0) == 0 ? serial::all_spanner_masks(g, 2) : all_spanner_masks(g, 2);
        benchmark::DoNotOptimize(r);
    }
}

void thread_args(benchmark::internal::Benchmark* b)
{
    b->Arg(0);
    for (int t = 1; t <= max_threads(); t *= 2) b->Arg(t);
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_girth)->Apply(thread_args);
BENCHMARK(BM_bad_edges)->Apply(thread_args);
BENCHMARK(BM_verify_spanner)->Apply(thread_args);
BENCHMARK(BM_montecarlo)->Apply(thread_args);
BENCHMARK(BM_lc_value_exact)->Apply(thread_args);
BENCHMARK(BM_all_spanner_masks)->Apply(thread_args);

BENCHMARK_MAIN();
