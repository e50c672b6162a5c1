#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "archetype/errors.hpp"
#include "archetype/ingest.hpp"

namespace archetype {

// Parameters of the rank-p factorization V ~= W H.
struct FactorizationConfig {
  int rank = 5;
  int max_iter = 500;
  double tol = 1e-5;        // relative-improvement stopping threshold
  int check_every = 10;     // iterations between convergence checks
  double epsilon = 1e-12;   // denominator guard in the updates
  int restarts = 5;         // independent runs with seeds seed, seed+1, ...
  std::uint64_t seed = 0;
  bool log1p_scale = false; // factorize log1p(V) instead of raw counts

  void validate() const;
};

struct FactorizationResult {
  std::vector<std::string> row_labels;  // rows kept after zero-row removal
  std::vector<std::string> col_labels;  // columns kept
  Eigen::MatrixXd W;                    // rows x rank, column-L1-normalized
  Eigen::MatrixXd H;                    // rank x cols
  double final_error = 0.0;             // Frobenius norm of V - W H
  std::vector<double> error_history;    // errors at init and each check point
  int iterations = 0;
  int restart_index = 0;
  std::vector<std::string> dropped_rows;
  std::vector<std::string> dropped_cols;

  Eigen::Index rank() const { return W.cols(); }
};

// Random positive factors: entries uniform in (hi*1e-3, hi] with
// hi = sqrt(max(mean_v, tiny)/p). Drawn row-major, W before H, from the
// SeededRng stream for `seed`.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_factors(Eigen::Index g,
                                                         Eigen::Index c,
                                                         Eigen::Index p,
                                                         double mean_v,
                                                         std::uint64_t seed);

// One multiplicative update. H first:
//   H' = H .* (W^T V) ./ (W^T W H + eps)
//   W' = W .* (V H'^T) ./ (W H' H'^T + eps)
// Non-negativity is preserved; the Frobenius objective never increases
// beyond a ~1e-12 relative wobble from the epsilon guard.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> update_step(
    const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
    const Eigen::MatrixXd& H, double epsilon);

// Full solver: drops all-zero rows/columns, runs `restarts` seeded runs of
// the multiplicative updates with periodic convergence checks, keeps the run
// with the lowest final error (ties -> lowest restart index) and returns
// L1-normalized factors. Throws EmptyMatrix or RankTooLarge.
FactorizationResult factorize(const ViewershipMatrix& matrix,
                              const FactorizationConfig& config);

struct Residual {
  Eigen::MatrixXd E;       // V - W H, may contain negatives
  double frobenius = 0.0;
  double relative = 0.0;   // frobenius / max(||V||_F, tiny)
};
Residual compute_residual(const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
                          const Eigen::MatrixXd& H);

// Rescales each W column to unit L1 norm and the matching H row by the
// inverse, leaving the product unchanged. All-zero W columns are left alone
// and reported.
struct NormalizedFactors {
  Eigen::MatrixXd W;
  Eigen::MatrixXd H;
  std::vector<Eigen::Index> zero_columns;
};
NormalizedFactors normalize_factors(const Eigen::MatrixXd& W,
                                    const Eigen::MatrixXd& H);

}  // namespace archetype
