#include "archetype/nmf.hpp"

#include <cmath>
#include <limits>

#include "archetype/rng.hpp"

namespace archetype {

namespace {

constexpr double kTiny = 1e-30;

void require_shapes(const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
                    const Eigen::MatrixXd& H) {
  if (W.rows() != V.rows() || H.cols() != V.cols() || W.cols() != H.rows())
    throw ShapeError("factor shapes do not conform: V " +
                     std::to_string(V.rows()) + "x" + std::to_string(V.cols()) +
                     ", W " + std::to_string(W.rows()) + "x" +
                     std::to_string(W.cols()) + ", H " +
                     std::to_string(H.rows()) + "x" + std::to_string(H.cols()));
}

struct RunOutcome {
  Eigen::MatrixXd W, H;
  double final_error = 0.0;
  std::vector<double> error_history;
  int iterations = 0;
};

RunOutcome run_once(const Eigen::MatrixXd& V, Eigen::Index p,
                    const FactorizationConfig& config, std::uint64_t seed) {
  const double mean_v = V.mean();
  auto [W, H] = init_factors(V.rows(), V.cols(), p, mean_v, seed);

  RunOutcome out;
  const double err_first = (V - W * H).norm();
  out.error_history.push_back(err_first);
  double err_prev = err_first;

  int it = 0;
  while (it < config.max_iter) {
    std::tie(W, H) = update_step(V, W, H, config.epsilon);
    ++it;
    if (it % config.check_every == 0 || it == config.max_iter) {
      const double err = (V - W * H).norm();
      out.error_history.push_back(err);
      if ((err_prev - err) / std::max(err_first, kTiny) < config.tol) break;
      err_prev = err;
    }
  }
  out.W = std::move(W);
  out.H = std::move(H);
  out.final_error = out.error_history.back();
  out.iterations = it;
  return out;
}

}  // namespace

void FactorizationConfig::validate() const {
  if (rank < 1) throw InvalidConfig("rank must be >= 1");
  if (max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
  if (!(tol > 0.0)) throw InvalidConfig("tol must be > 0");
  if (check_every < 1) throw InvalidConfig("check_every must be >= 1");
  if (!(epsilon > 0.0)) throw InvalidConfig("epsilon must be > 0");
  if (restarts < 1) throw InvalidConfig("restarts must be >= 1");
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_factors(Eigen::Index g,
                                                         Eigen::Index c,
                                                         Eigen::Index p,
                                                         double mean_v,
                                                         std::uint64_t seed) {
  if (g < 1 || c < 1 || p < 1)
    throw BadDimensions("init_factors: dimensions must be >= 1 (got " +
                        std::to_string(g) + ", " + std::to_string(c) + ", " +
                        std::to_string(p) + ")");
  const double hi = std::sqrt(std::max(mean_v, kTiny) / double(p));
  const double lo = hi * 1e-3;
  SeededRng rng(seed);
  Eigen::MatrixXd W(g, p), H(p, c);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index k = 0; k < p; ++k)
      W(i, k) = rng.uniform_open_closed(lo, hi);
  for (Eigen::Index k = 0; k < p; ++k)
    for (Eigen::Index j = 0; j < c; ++j)
      H(k, j) = rng.uniform_open_closed(lo, hi);
  return {std::move(W), std::move(H)};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> update_step(
    const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
    const Eigen::MatrixXd& H, double epsilon) {
  require_shapes(V, W, H);
  const Eigen::MatrixXd Wt = W.transpose();
  const Eigen::MatrixXd numer_h = Wt * V;
  const Eigen::MatrixXd denom_h = (Wt * W) * H;
  const Eigen::MatrixXd Hn =
      (H.array() * numer_h.array() / (denom_h.array() + epsilon)).matrix();

  const Eigen::MatrixXd numer_w = V * Hn.transpose();
  const Eigen::MatrixXd denom_w = W * (Hn * Hn.transpose());
  const Eigen::MatrixXd Wn =
      (W.array() * numer_w.array() / (denom_w.array() + epsilon)).matrix();
  return {std::move(Wn), std::move(Hn)};
}

FactorizationResult factorize(const ViewershipMatrix& matrix,
                              const FactorizationConfig& config) {
  config.validate();

  Eigen::MatrixXd V0 = matrix.data;
  if (config.log1p_scale) V0 = V0.array().log1p().matrix();

  // Splice out all-zero rows and columns; the multiplicative updates cannot
  // move them off zero and they would break normalization.
  std::vector<Eigen::Index> keep_rows, keep_cols;
  FactorizationResult result;
  for (Eigen::Index i = 0; i < V0.rows(); ++i) {
    if (V0.row(i).sum() > 0.0) {
      keep_rows.push_back(i);
      result.row_labels.push_back(matrix.row_labels[std::size_t(i)]);
    } else {
      result.dropped_rows.push_back(matrix.row_labels[std::size_t(i)]);
    }
  }
  for (Eigen::Index j = 0; j < V0.cols(); ++j) {
    if (V0.col(j).sum() > 0.0) {
      keep_cols.push_back(j);
      result.col_labels.push_back(matrix.col_labels[std::size_t(j)]);
    } else {
      result.dropped_cols.push_back(matrix.col_labels[std::size_t(j)]);
    }
  }
  if (keep_rows.empty() || keep_cols.empty())
    throw EmptyMatrix("matrix has no positive entries");

  Eigen::MatrixXd V(keep_rows.size(), keep_cols.size());
  for (std::size_t i = 0; i < keep_rows.size(); ++i)
    for (std::size_t j = 0; j < keep_cols.size(); ++j)
      V(Eigen::Index(i), Eigen::Index(j)) = V0(keep_rows[i], keep_cols[j]);

  const Eigen::Index p = config.rank;
  if (p > std::min(V.rows(), V.cols()))
    throw RankTooLarge("rank " + std::to_string(p) + " exceeds min(" +
                       std::to_string(V.rows()) + ", " +
                       std::to_string(V.cols()) +
                       ") after zero row/column removal");

  RunOutcome best;
  int best_index = -1;
  for (int r = 0; r < config.restarts; ++r) {
    RunOutcome out = run_once(V, p, config, config.seed + std::uint64_t(r));
    if (best_index < 0 || out.final_error < best.final_error) {
      best = std::move(out);
      best_index = r;
    }
  }

  NormalizedFactors norm = normalize_factors(best.W, best.H);
  result.W = std::move(norm.W);
  result.H = std::move(norm.H);
  result.final_error = best.final_error;
  result.error_history = std::move(best.error_history);
  result.iterations = best.iterations;
  result.restart_index = best_index;
  return result;
}

Residual compute_residual(const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
                          const Eigen::MatrixXd& H) {
  require_shapes(V, W, H);
  Residual r;
  r.E = V - W * H;
  r.frobenius = r.E.norm();
  r.relative = r.frobenius / std::max(V.norm(), kTiny);
  return r;
}

NormalizedFactors normalize_factors(const Eigen::MatrixXd& W,
                                    const Eigen::MatrixXd& H) {
  if (W.cols() != H.rows())
    throw ShapeError("normalize_factors: W has " + std::to_string(W.cols()) +
                     " columns but H has " + std::to_string(H.rows()) +
                     " rows");
  NormalizedFactors out{W, H, {}};
  for (Eigen::Index k = 0; k < W.cols(); ++k) {
    const double scale = W.col(k).sum();  // entries are non-negative
    if (scale == 0.0) {
      out.zero_columns.push_back(k);
      continue;
    }
    out.W.col(k) /= scale;
    out.H.row(k) *= scale;
  }
  return out;
}

}  // namespace archetype
