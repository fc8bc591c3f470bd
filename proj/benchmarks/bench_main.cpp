#include "axdecomp/decomposition.hpp"
#include "axdecomp/graph_embedding.hpp"
#include "axdecomp/neighbors.hpp"
#include "axdecomp/pipeline.hpp"
#include "axdecomp/quality.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

namespace {

axd::Dataset random_dataset(Eigen::Index n, Eigen::Index d) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  axd::Dataset ds;
  ds.samples.resize(n, d);
  for (Eigen::Index i = 0; i < ds.samples.size(); ++i) ds.samples(i) = normal(rng);
  for (Eigen::Index j = 0; j < d; ++j) ds.dim_names.push_back("x" + std::to_string(j));
  return axd::standardize(ds);
}

void BM_Knn(benchmark::State& state) {
  const auto ds = random_dataset(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(axd::knn_indices(ds.samples, 10));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Knn)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_SolveLpp(benchmark::State& state) {
  const auto ds = random_dataset(state.range(0), 12);
  const auto graphs = axd::build_graphs(ds, axd::GraphParams{});
  const Eigen::MatrixXd none = Eigen::MatrixXd::Zero(12, 12);
  for (auto _ : state) benchmark::DoNotOptimize(axd::solve_projection(ds, graphs, none));
}
BENCHMARK(BM_SolveLpp)->Arg(200)->Arg(500);

void BM_BuildGraphs(benchmark::State& state) {
  const auto ds = random_dataset(state.range(0), 12);
  for (auto _ : state) benchmark::DoNotOptimize(axd::build_graphs(ds, axd::GraphParams{}));
}
BENCHMARK(BM_BuildGraphs)->Arg(200)->Arg(500);

void BM_DecomposeSingle(benchmark::State& state) {
  const auto ds = random_dataset(400, state.range(0));
  const auto set = axd::find_representative_projections(ds, axd::GraphParams{}, {1, 1.0, 0.05});
  const axd::DecompositionConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(axd::decompose_single(ds, set.projections.front(), cfg, {}));
  }
}
BENCHMARK(BM_DecomposeSingle)->Arg(8)->Arg(32);

void BM_Fidelity(benchmark::State& state) {
  const auto ds = random_dataset(state.range(0), 8);
  const Eigen::MatrixXd y = ds.samples.leftCols(2);
  for (auto _ : state) benchmark::DoNotOptimize(axd::fidelity_scores(ds, y, 30, 30));
}
BENCHMARK(BM_Fidelity)->Arg(200)->Arg(800);

void BM_PipelineWine(benchmark::State& state) {
  axd::AnalysisConfig cfg;
  cfg.input = std::filesystem::path(AXD_BENCH_DATA_DIR) / "wine.csv";
  cfg.label = "cultivar";
  cfg.objective = "lde";
  for (auto _ : state) benchmark::DoNotOptimize(axd::run_analysis(cfg));
}
BENCHMARK(BM_PipelineWine)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
