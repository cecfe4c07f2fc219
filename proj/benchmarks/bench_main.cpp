// Microbenchmarks for the hot paths: planarity testing, witness extraction,
// the primal heuristic, preprocessing, the two heaviest lazy separators, a
// couple of end-to-end solves, and model export. Run via
//   ./build/benchmarks/mps_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "mps/form_kuratowski.hpp"
#include "mps/form_leftright.hpp"
#include "mps/graph.hpp"
#include "mps/heuristics.hpp"
#include "mps/kuratowski.hpp"
#include "mps/pb_export.hpp"
#include "mps/pipeline.hpp"
#include "mps/planarity.hpp"
#include "mps/preprocess.hpp"

#include "support/named_graphs.hpp"

using namespace mps;
using namespace mps::testsupport;

namespace {

/// Two K5 blocks joined by a path, plus a pendant tree: exercises every
/// reduction rule (bridges, degree-<=2 chains, block split).
WeightedGraph two_k5_with_tails() {
    std::vector<EdgeInput> edges;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) edges.push_back({u, v, 1});
    for (int u = 5; u < 10; ++u)
        for (int v = u + 1; v < 10; ++v) edges.push_back({u, v, 1});
    edges.push_back({4, 10, 1});
    edges.push_back({10, 11, 1});
    edges.push_back({11, 5, 1});
    edges.push_back({0, 12, 1});
    edges.push_back({12, 13, 1});
    edges.push_back({12, 14, 1});
    return build_graph(15, edges);
}

void BM_planarity_grid15(benchmark::State& state) {
    const WeightedGraph g = grid_graph(15, 15);
    for (auto _ : state) benchmark::DoNotOptimize(test_planarity(g).planar);
}
BENCHMARK(BM_planarity_grid15);

void BM_planarity_petersen(benchmark::State& state) {
    const WeightedGraph g = petersen();
    for (auto _ : state) benchmark::DoNotOptimize(test_planarity(g).planar);
}
BENCHMARK(BM_planarity_petersen);

void BM_extract_kuratowskis_k6(benchmark::State& state) {
    const WeightedGraph g = complete_graph(6);
    const EdgeSelection all(g.edge_count(), true);
    for (auto _ : state) benchmark::DoNotOptimize(extract_kuratowskis(g, all, 25));
}
BENCHMARK(BM_extract_kuratowskis_k6);

void BM_cactus_heuristic_grid10(benchmark::State& state) {
    const WeightedGraph g = grid_graph(10, 10);
    for (auto _ : state) benchmark::DoNotOptimize(cactus_heuristic(g));
}
BENCHMARK(BM_cactus_heuristic_grid10);

void BM_cactus_heuristic_random40(benchmark::State& state) {
    const WeightedGraph g = random_connected(40, 60, 7);
    for (auto _ : state) benchmark::DoNotOptimize(cactus_heuristic(g));
}
BENCHMARK(BM_cactus_heuristic_random40);

void BM_reduce_two_k5_tails(benchmark::State& state) {
    const WeightedGraph g = two_k5_with_tails();
    for (auto _ : state) benchmark::DoNotOptimize(reduce(g));
}
BENCHMARK(BM_reduce_two_k5_tails);

void BM_separate_kuratowski_k6(benchmark::State& state) {
    const WeightedGraph g = complete_graph(6);
    const Assignment all_ones(static_cast<size_t>(g.edge_count()), 1);
    for (auto _ : state) benchmark::DoNotOptimize(separate_kuratowski(g, all_ones));
}
BENCHMARK(BM_separate_kuratowski_k6);

void BM_separate_bicoloring_feasible(benchmark::State& state) {
    // Feasible point (the common case in-solve): full matcher pass, no cut.
    const WeightedGraph g = petersen();
    const Assignment a = *leftright_warm_start(g, cactus_heuristic(g));
    for (auto _ : state) benchmark::DoNotOptimize(separate_bicoloring(g, a));
}
BENCHMARK(BM_separate_bicoloring_feasible);

void BM_solve_k5_kuratowski(benchmark::State& state) {
    const WeightedGraph g = complete_graph(5);
    for (auto _ : state) {
        PipelineConfig cfg;
        cfg.formulation = Formulation::Kuratowski;
        benchmark::DoNotOptimize(solve_mps(g, cfg));
    }
}
BENCHMARK(BM_solve_k5_kuratowski);

void BM_solve_petersen_leftright(benchmark::State& state) {
    const WeightedGraph g = petersen();
    for (auto _ : state) {
        PipelineConfig cfg;
        cfg.formulation = Formulation::LeftRight;
        benchmark::DoNotOptimize(solve_mps(g, cfg));
    }
}
BENCHMARK(BM_solve_petersen_leftright);

void BM_export_opb_leftright_petersen(benchmark::State& state) {
    const PBModel m = build_leftright_model(petersen());
    for (auto _ : state) benchmark::DoNotOptimize(export_opb(m));
}
BENCHMARK(BM_export_opb_leftright_petersen);

} // namespace

BENCHMARK_MAIN();
