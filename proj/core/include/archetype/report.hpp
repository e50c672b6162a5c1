#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "archetype/errors.hpp"
#include "archetype/ingest.hpp"
#include "archetype/nmf.hpp"
#include "archetype/personas.hpp"

namespace archetype {

// Views, share of total and average watch time per channel. Shares sum to
// 100 within rounding for any matrix with views; a channel with no rows
// reports zeros.
struct ChannelStats {
  std::int64_t views = 0;
  double share_percent = 0.0;
  double avg_watch_seconds = 0.0;  // watch total / view total, 0 if no views
};

struct ChannelSummary {
  std::array<ChannelStats, kChannelCount> by_channel{};  // kChannelOrder
  std::int64_t total_views = 0;
};

ChannelSummary summarize_channels(const ViewershipMatrix& matrix);

// The top referral sources (by total views, at most max_rows) against the
// factor components. `normalized` rows are row-stochastic so heat compares
// components within a referral; an all-zero raw row stays all zero.
struct HeatmapData {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;  // "k:ChannelLabel"
  Eigen::MatrixXd raw;                  // rows x p, W values
  Eigen::MatrixXd normalized;           // rows x p, rows sum to 1 (or 0)
};

HeatmapData heatmap_data(const FactorizationResult& result,
                         const ViewershipMatrix& matrix,
                         std::size_t max_rows = 15,
                         LabelMode mode = LabelMode::auto_select);

// Machine-readable twin of the heatmap.
// Header: referral,component_0,...,component_{p-1}.
std::string heatmap_csv(const HeatmapData& heatmap, bool normalized = true);

// Standalone SVG with one rect per cell on a linear white-to-dark ramp over
// the normalized value. Byte-deterministic for identical input.
std::string render_svg(const HeatmapData& heatmap);

// JSON document {"channels": ..., "personas": [...]} where each persona
// carries its full rankings plus the single preferred video type (the top
// ranked one).
std::string personas_report_json(const std::vector<Persona>& personas,
                                 const ChannelSummary& summary);

}  // namespace archetype
