#pragma once

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "archetype/errors.hpp"
#include "archetype/ingest.hpp"

namespace archetype {

enum class NoiseKind { none, poisson };

// Ground-truth factors with block structure: the rows of block k load
// heavily (>= 0.5) on component k and lightly (<= 0.05) elsewhere, and the
// same holds for the column blocks of H_true. Row block k carries channel
// kChannelOrder[k % 5].
struct PlantedModel {
  Eigen::MatrixXd W_true;  // g x p
  Eigen::MatrixXd H_true;  // p x c
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<ChannelClass> row_channels;
  NoiseKind noise = NoiseKind::none;
  double scale = 1.0;
  std::uint64_t seed = 0;
};

// Deterministic planted factors: in-block weights uniform in [0.5, 1.0),
// off-block in [0, 0.05), labels "ref_000".../"vid_000"... Rows and columns
// split into p contiguous blocks, remainder on the last. Throws
// BadDimensions unless g >= p >= 1 and c >= p.
PlantedModel gen_planted_factors(Eigen::Index g, Eigen::Index c,
                                 Eigen::Index p, std::uint64_t seed);

// Per-view watch time used to fill row_watch_seconds, by channel in
// kChannelOrder. Search/Referral/Social come from typical session durations
// (251/191/96 s); Direct and Other default to an arbitrary 140 s.
std::array<double, kChannelCount> default_watch_seconds_per_view();

// Draws a view matrix from the model: exactly scale * W_true * H_true
// without noise, or entrywise Poisson(scale * product) sampled row-major
// from SeededRng(model.seed). Row watch totals are the per-channel mean
// watch time times the row's view total.
ViewershipMatrix sample_views(const PlantedModel& model,
                              const std::array<double, kChannelCount>&
                                  watch_per_view = default_watch_seconds_per_view());

// Writes the matrix back out as an analytics log, one CSV row per nonzero
// cell (values rounded to integers). The medium is chosen so the row's
// channel survives re-classification where the format allows: Search ->
// "organic", Referral -> "referral", Social -> "referral" (recovered only
// for sources in the social list), Direct -> "(none)" (recovered only for
// the literal "(direct)" source), Other -> "email". Watch seconds are
// apportioned over the row's cells proportionally to views, exactly
// preserving the row total.
void emit_log(const ViewershipMatrix& matrix, std::chrono::year_month_day date,
              std::ostream& out);

}  // namespace archetype
