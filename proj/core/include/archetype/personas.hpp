#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "archetype/errors.hpp"
#include "archetype/ingest.hpp"
#include "archetype/nmf.hpp"

namespace archetype {

// One factor component read as a user archetype.
struct Persona {
  int component_index = 0;
  ChannelClass channel_label = ChannelClass::Search;
  std::array<double, kChannelCount> channel_scores{};  // W mass per channel
  std::vector<std::pair<std::string, double>> top_referrals;
  std::vector<std::pair<std::string, double>> top_video_types;
};

enum class LabelMode {
  independent,  // each component labeled by its own argmax channel
  one_to_one,   // distinct labels, best total score over all assignments
  auto_select,  // one_to_one when rank == channels present, else independent
};

// Per-component channel mass: out(k, ch) = sum of W(i, k) over rows whose
// channel is ch. Rows are components, columns follow kChannelOrder.
Eigen::MatrixXd channel_mass(const Eigen::MatrixXd& W,
                             const std::vector<ChannelClass>& row_channels);

// Labels every component with a channel. Ties break toward the earlier
// channel in declaration order; one_to_one ties take the lexicographically
// smallest assignment. Throws TooManyComponents when one_to_one is asked for
// more components than 8 or than distinct channels present.
std::vector<ChannelClass> label_components(
    const Eigen::MatrixXd& W, const std::vector<ChannelClass>& row_channels,
    LabelMode mode);

// The n largest entries of W column k as (row label, weight), weight
// descending, equal weights ordered by label. Throws BadComponent.
std::vector<std::pair<std::string, double>> top_referrals(
    const Eigen::MatrixXd& W, const std::vector<std::string>& row_labels,
    Eigen::Index component, std::size_t count);

// Same over row k of H and the column labels.
std::vector<std::pair<std::string, double>> top_video_types(
    const Eigen::MatrixXd& H, const std::vector<std::string>& col_labels,
    Eigen::Index component, std::size_t count);

// Builds one Persona per component from a factorization and the matrix it
// came from. Throws LabelMismatch when the two disagree.
std::vector<Persona> extract_personas(const FactorizationResult& result,
                                      const ViewershipMatrix& matrix,
                                      std::size_t n_referrals = 15,
                                      std::size_t n_videos = 5,
                                      LabelMode mode = LabelMode::auto_select);

// Matches estimated components to reference components: permutation[k] is
// the estimated column paired with reference column k, chosen to maximize
// the summed cosine similarity over all p! candidates (p <= 8). Zero columns
// have cosine 0; ties take the lexicographically smallest permutation.
struct Alignment {
  std::vector<int> permutation;
  double mean_cosine = 0.0;
};
Alignment align_components(const Eigen::MatrixXd& W_est,
                           const Eigen::MatrixXd& W_true);

}  // namespace archetype
