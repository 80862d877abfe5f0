#include <benchmark/benchmark.h>

#include "mimlab/generators.hpp"
#include "mimlab/obdd.hpp"
#include "mimlab/traces.hpp"
#include "mimlab/width.hpp"

using namespace mimlab;

static void BM_MaxInducedMatching(benchmark::State& state) {
    SkewGrid sg = skew_grid(4, 2, static_cast<int>(state.range(0)));
    VertexSet u(sg.graph.n());
    for (int v : sg.meta.layer_vertices(1)) u.set(v);
    for (int v : sg.meta.layer_vertices(2)) u.set(v);
    for (auto _ : state) benchmark::DoNotOptimize(max_induced_cut_matching(sg.graph, u).size);
}
BENCHMARK(BM_MaxInducedMatching)->Arg(1)->Arg(2)->Arg(3);

static void BM_ExactWidth(benchmark::State& state) {
    Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.3, 1);
    for (auto _ : state) benchmark::DoNotOptimize(exact_width(g, WidthVariant::lu).value);
}
BENCHMARK(BM_ExactWidth)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_Traces(benchmark::State& state) {
    Graph g = matching_counterexample(static_cast<int>(state.range(0)));
    VertexSet u(g.n());
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i) u.set(i);
    for (auto _ : state) benchmark::DoNotOptimize(traces(g, u).size());
}
BENCHMARK(BM_Traces)->Arg(8)->Arg(12)->Arg(16);

static void BM_BuildObdd(benchmark::State& state) {
    Graph g = grid(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(build_obdd(g, VertexOrdering::identity(g.n())).size_total());
}
BENCHMARK(BM_BuildObdd)->Arg(4)->Arg(8)->Arg(16);

static void BM_MinObddDp(benchmark::State& state) {
    Graph g = grid(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(min_obdd_size_exact(g, MinimizeMethod::dp).size_total);
}
BENCHMARK(BM_MinObddDp)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
