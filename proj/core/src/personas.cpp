#include "archetype/personas.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace archetype {

namespace {

// Enumerates injective assignments of components to channel indices in
// lexicographic order; keeps the first assignment achieving the best score.
void search_assignments(const Eigen::MatrixXd& mass, std::size_t component,
                        std::vector<int>& current, std::array<bool, kChannelCount>& used,
                        double score, std::vector<int>& best,
                        double& best_score) {
  const auto p = std::size_t(mass.rows());
  if (component == p) {
    if (best.empty() || score > best_score) {
      best = current;
      best_score = score;
    }
    return;
  }
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    if (used[ch]) continue;
    used[ch] = true;
    current.push_back(int(ch));
    search_assignments(mass, component + 1, current, used,
                       score + mass(Eigen::Index(component), Eigen::Index(ch)),
                       best, best_score);
    current.pop_back();
    used[ch] = false;
  }
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace

Eigen::MatrixXd channel_mass(const Eigen::MatrixXd& W,
                             const std::vector<ChannelClass>& row_channels) {
  if (std::size_t(W.rows()) != row_channels.size())
    throw ShapeError("channel_mass: " + std::to_string(W.rows()) +
                     " rows but " + std::to_string(row_channels.size()) +
                     " channel entries");
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(W.cols(), kChannelCount);
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    const auto ch = Eigen::Index(row_channels[std::size_t(i)]);
    mass.col(ch) += W.row(i).transpose();
  }
  return mass;
}

std::vector<ChannelClass> label_components(
    const Eigen::MatrixXd& W, const std::vector<ChannelClass>& row_channels,
    LabelMode mode) {
  const Eigen::MatrixXd mass = channel_mass(W, row_channels);
  const auto p = std::size_t(W.cols());

  std::set<ChannelClass> present(row_channels.begin(), row_channels.end());
  if (mode == LabelMode::auto_select)
    mode = (p == present.size() && p <= 8) ? LabelMode::one_to_one
                                           : LabelMode::independent;

  std::vector<ChannelClass> labels(p);
  if (mode == LabelMode::independent) {
    for (std::size_t k = 0; k < p; ++k) {
      Eigen::Index arg = 0;
      double best = mass(Eigen::Index(k), 0);
      for (Eigen::Index ch = 1; ch < Eigen::Index(kChannelCount); ++ch) {
        if (mass(Eigen::Index(k), ch) > best) {
          best = mass(Eigen::Index(k), ch);
          arg = ch;
        }
      }
      labels[k] = kChannelOrder[std::size_t(arg)];
    }
    return labels;
  }

  if (p > 8)
    throw TooManyComponents("one_to_one labeling supports at most 8 components, got " +
                            std::to_string(p));
  if (p > present.size())
    throw TooManyComponents(
        "one_to_one labeling needs at least as many distinct channels as components (" +
        std::to_string(present.size()) + " present, " + std::to_string(p) +
        " components)");

  std::vector<int> best, current;
  std::array<bool, kChannelCount> used{};
  double best_score = 0.0;
  search_assignments(mass, 0, current, used, 0.0, best, best_score);
  for (std::size_t k = 0; k < p; ++k) labels[k] = kChannelOrder[std::size_t(best[k])];
  return labels;
}

std::vector<std::pair<std::string, double>> top_referrals(
    const Eigen::MatrixXd& W, const std::vector<std::string>& row_labels,
    Eigen::Index component, std::size_t count) {
  if (component < 0 || component >= W.cols())
    throw BadComponent("component " + std::to_string(component) +
                       " out of range [0, " + std::to_string(W.cols()) + ")");
  if (std::size_t(W.rows()) != row_labels.size())
    throw ShapeError("top_referrals: label count does not match rows");

  std::vector<std::pair<std::string, double>> entries;
  entries.reserve(row_labels.size());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    entries.emplace_back(row_labels[std::size_t(i)], W(i, component));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (entries.size() > count) entries.resize(count);
  return entries;
}

std::vector<std::pair<std::string, double>> top_video_types(
    const Eigen::MatrixXd& H, const std::vector<std::string>& col_labels,
    Eigen::Index component, std::size_t count) {
  if (component < 0 || component >= H.rows())
    throw BadComponent("component " + std::to_string(component) +
                       " out of range [0, " + std::to_string(H.rows()) + ")");
  // Reuse the column ranking by handing over H^T.
  return top_referrals(H.transpose(), col_labels, component, count);
}

std::vector<Persona> extract_personas(const FactorizationResult& result,
                                      const ViewershipMatrix& matrix,
                                      std::size_t n_referrals,
                                      std::size_t n_videos, LabelMode mode) {
  // The factorization must cover exactly the matrix rows/columns that were
  // not dropped, in matrix order.
  std::set<std::string> dropped_rows(result.dropped_rows.begin(),
                                     result.dropped_rows.end());
  std::set<std::string> dropped_cols(result.dropped_cols.begin(),
                                     result.dropped_cols.end());
  std::vector<std::string> expected_rows, expected_cols;
  std::vector<ChannelClass> kept_channels;
  for (std::size_t i = 0; i < matrix.row_labels.size(); ++i) {
    if (!dropped_rows.count(matrix.row_labels[i])) {
      expected_rows.push_back(matrix.row_labels[i]);
      kept_channels.push_back(matrix.row_channels[i]);
    }
  }
  for (const auto& label : matrix.col_labels)
    if (!dropped_cols.count(label)) expected_cols.push_back(label);

  if (expected_rows != result.row_labels || expected_cols != result.col_labels)
    throw LabelMismatch(
        "factorization labels do not match the matrix after dropping zero "
        "rows/columns");
  if (std::size_t(result.W.rows()) != expected_rows.size() ||
      std::size_t(result.H.cols()) != expected_cols.size())
    throw LabelMismatch("factor shapes do not match the matrix labels");

  const std::vector<ChannelClass> labels =
      label_components(result.W, kept_channels, mode);
  const Eigen::MatrixXd mass = channel_mass(result.W, kept_channels);

  std::vector<Persona> personas;
  personas.reserve(std::size_t(result.rank()));
  for (Eigen::Index k = 0; k < result.rank(); ++k) {
    Persona persona;
    persona.component_index = int(k);
    persona.channel_label = labels[std::size_t(k)];
    for (std::size_t ch = 0; ch < kChannelCount; ++ch)
      persona.channel_scores[ch] = mass(k, Eigen::Index(ch));
    persona.top_referrals =
        top_referrals(result.W, result.row_labels, k, n_referrals);
    persona.top_video_types =
        top_video_types(result.H, result.col_labels, k, n_videos);
    personas.push_back(std::move(persona));
  }
  return personas;
}

Alignment align_components(const Eigen::MatrixXd& W_est,
                           const Eigen::MatrixXd& W_true) {
  if (W_est.rows() != W_true.rows() || W_est.cols() != W_true.cols())
    throw ShapeError("align_components: shapes differ");
  const auto p = std::size_t(W_est.cols());
  if (p > 8)
    throw TooManyComponents("align_components supports at most 8 components, got " +
                            std::to_string(p));

  Eigen::MatrixXd cos(p, p);  // cos(e, t) = cosine(est column e, true column t)
  for (std::size_t e = 0; e < p; ++e)
    for (std::size_t t = 0; t < p; ++t)
      cos(Eigen::Index(e), Eigen::Index(t)) =
          cosine(W_est.col(Eigen::Index(e)), W_true.col(Eigen::Index(t)));

  // std::next_permutation walks permutations in lexicographic order, so the
  // first maximum found is the lexicographically smallest tie.
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_score = -std::numeric_limits<double>::infinity();
  do {
    double score = 0.0;
    for (std::size_t t = 0; t < p; ++t)
      score += cos(perm[t], Eigen::Index(t));
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return Alignment{best, p == 0 ? 0.0 : best_score / double(p)};
}

}  // namespace archetype
