#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace archetype {

// Deterministic random stream used everywhere seeds appear.
//
// The engine is std::mt19937_64 (fixed by the C++ standard) and all
// distributions are derived here by explicit arithmetic, so a seed produces
// the same sequence on every platform and standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Uniform in (lo, hi]; never returns lo, so results stay strictly positive
  // when lo >= 0.
  double uniform_open_closed(double lo, double hi) {
    return hi - uniform01() * (hi - lo);
  }

  // Exact Poisson sample via Knuth's product-of-uniforms method, chunked so
  // exp(-lambda) never underflows. Cost is O(lambda); fine for view-count
  // intensities, not meant for lambda in the millions.
  std::int64_t poisson(double lambda) {
    constexpr double kChunk = 500.0;
    std::int64_t n = 0;
    while (lambda > kChunk) {
      n += poisson_small(kChunk);
      lambda -= kChunk;
    }
    return n + poisson_small(lambda);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::int64_t poisson_small(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 engine_;
};

}  // namespace archetype
