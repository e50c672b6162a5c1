#include <benchmark/benchmark.h>

#include "archetype/nmf.hpp"
#include "archetype/synth.hpp"

using namespace archetype;

static void BM_UpdateStep(benchmark::State& state) {
  const PlantedModel model =
      gen_planted_factors(state.range(0), state.range(1), 5, 1);
  const Eigen::MatrixXd V = model.W_true * model.H_true;
  auto [W, H] = init_factors(V.rows(), V.cols(), 5, V.mean(), 2);
  for (auto _ : state) {
    std::tie(W, H) = update_step(V, W, H, 1e-12);
    benchmark::DoNotOptimize(W);
  }
}
BENCHMARK(BM_UpdateStep)->Args({100, 200})->Args({500, 1000})
    ->Unit(benchmark::kMicrosecond);

static void BM_Factorize(benchmark::State& state) {
  PlantedModel model = gen_planted_factors(100, 200, 5, 1);
  model.noise = NoiseKind::poisson;
  model.scale = 50.0;
  const ViewershipMatrix matrix = sample_views(model);
  FactorizationConfig config;
  config.restarts = 1;
  for (auto _ : state) {
    const FactorizationResult result = factorize(matrix, config);
    benchmark::DoNotOptimize(result.final_error);
  }
}
BENCHMARK(BM_Factorize)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
