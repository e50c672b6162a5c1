#include <benchmark/benchmark.h>

#include <sstream>

#include "archetype/ingest.hpp"
#include "archetype/rng.hpp"

using namespace archetype;

namespace {

std::string synthetic_log(int rows) {
  SeededRng rng(17);
  std::string csv = "date,source,medium,video_type,views,watch_seconds\n";
  for (int i = 0; i < rows; ++i) {
    csv += "2016-06-24,src_" + std::to_string(rng.raw() % 500) +
           ",referral,vid_" + std::to_string(rng.raw() % 300) + "," +
           std::to_string(rng.raw() % 1000) + "," +
           std::to_string(rng.raw() % 100000) + "\n";
  }
  return csv;
}

}  // namespace

static void BM_ParseLog(benchmark::State& state) {
  const std::string csv = synthetic_log(int(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(csv);
    auto records = parse_log(in);
    benchmark::DoNotOptimize(records);
  }
  state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(csv.size()));
}
BENCHMARK(BM_ParseLog)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_BuildMatrix(benchmark::State& state) {
  const std::string csv = synthetic_log(int(state.range(0)));
  std::istringstream in(csv);
  const auto records = parse_log(in);
  for (auto _ : state) {
    auto matrix = build_matrix(records);
    benchmark::DoNotOptimize(matrix);
  }
}
BENCHMARK(BM_BuildMatrix)->Arg(10000)->Unit(benchmark::kMillisecond);
