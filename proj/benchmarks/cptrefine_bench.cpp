#include <benchmark/benchmark.h>

#include <random>

#include "cptrefine/cptrefine.hpp"

using namespace cptrefine;

namespace {

Cpt random_binary_cpt(const CptShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> probs;
  for (std::size_t k = 0; k < shape.row_count(); ++k) {
    const double p = unit(rng);
    probs.insert(probs.end(), {p, 1.0 - p});
  }
  return Cpt(shape, std::move(probs));
}

CptShape binary_shape(std::size_t rows_log2) {
  return {std::vector<std::size_t>(rows_log2, 2), 2};
}

}  // namespace

static void BM_ScmBruteforce(benchmark::State& state) {
  const Cpt truth = random_binary_cpt(binary_shape(static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(scm_bruteforce(truth).best_score);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bipartition_count(truth.row_count())));
}
BENCHMARK(BM_ScmBruteforce)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ScmFitSingleSplit(benchmark::State& state) {
  const Cpt truth = random_binary_cpt({{2, 2, 2, 3}, 2}, 2);
  ScmSpec spec{std::vector<std::uint8_t>(24, 0)};
  for (std::size_t k = 0; k < 24; k += 3) spec.block[k + 1] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(scm_fit(truth, spec).score);
}
BENCHMARK(BM_ScmFitSingleSplit);

static void BM_IciFitness(benchmark::State& state) {
  const CptShape shape{{2, 2, 2, 3}, 2};
  const Cpt truth = random_binary_cpt(shape, 3);
  const IciSpec spec{{{0.1, 0.7}, {0.2, 0.6}, {0.3, 0.9}, {0.1, 0.5, 0.8}},
                     {0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(score_sum_tvd(truth, ici_evaluate(shape, spec)));
}
BENCHMARK(BM_IciFitness);

static void BM_SiciFitness(benchmark::State& state) {
  const CptShape shape{{2, 2, 2, 3}, 2};
  const Cpt truth = random_binary_cpt(shape, 4);
  const SiciSpec spec{{{1}, {0, 2, 3}}, {{0.2, 0.6}, std::vector<double>(12, 0.4)}, {0, 0, 1, 0}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(score_sum_tvd(truth, us_sici_evaluate(shape, spec)));
}
BENCHMARK(BM_SiciFitness);

static void BM_GaGeneration(benchmark::State& state) {
  GaConfig config;
  config.max_generations = 1;
  const Fitness sphere = [](const Genome& g) {
    double total = 0;
    for (double r : g.reals) total += (r - 0.5) * (r - 0.5);
    return total;
  };
  for (auto _ : state) benchmark::DoNotOptimize(ga_run(sphere, {15, 2, 9}, config, 1, 0, {}).best_score);
}
BENCHMARK(BM_GaGeneration)->Unit(benchmark::kMicrosecond);

static void BM_MedianLad(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (auto _ : state) benchmark::DoNotOptimize(median_lad(values));
}
BENCHMARK(BM_MedianLad)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
