#include "archetype/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "text_util.hpp"

namespace archetype {

namespace {

using nlohmann::ordered_json;

ordered_json summary_to_json(const ChannelSummary& summary) {
  ordered_json channels = ordered_json::array();
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const ChannelStats& stats = summary.by_channel[ch];
    channels.push_back({{"channel", to_string(kChannelOrder[ch])},
                        {"views", stats.views},
                        {"share_percent", stats.share_percent},
                        {"avg_watch_seconds", stats.avg_watch_seconds}});
  }
  return ordered_json{{"total_views", summary.total_views},
                      {"by_channel", std::move(channels)}};
}

ordered_json ranking_to_json(
    const std::vector<std::pair<std::string, double>>& ranking) {
  ordered_json out = ordered_json::array();
  for (const auto& [label, weight] : ranking)
    out.push_back(ordered_json::array({label, weight}));
  return out;
}

}  // namespace

ChannelSummary summarize_channels(const ViewershipMatrix& matrix) {
  std::array<double, kChannelCount> views{};
  std::array<double, kChannelCount> watch{};
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    const auto ch = std::size_t(matrix.row_channels[std::size_t(i)]);
    views[ch] += matrix.data.row(i).sum();
    watch[ch] += matrix.row_watch_seconds[std::size_t(i)];
  }
  const double total = std::accumulate(views.begin(), views.end(), 0.0);

  ChannelSummary summary;
  summary.total_views = std::llround(total);
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    ChannelStats& stats = summary.by_channel[ch];
    stats.views = std::llround(views[ch]);
    stats.share_percent = total > 0.0 ? views[ch] / total * 100.0 : 0.0;
    stats.avg_watch_seconds = views[ch] > 0.0 ? watch[ch] / views[ch] : 0.0;
  }
  return summary;
}

HeatmapData heatmap_data(const FactorizationResult& result,
                         const ViewershipMatrix& matrix, std::size_t max_rows,
                         LabelMode mode) {
  // Row index and channel of every kept label, in matrix order.
  std::vector<Eigen::Index> matrix_row;
  std::vector<ChannelClass> kept_channels;
  {
    std::size_t next = 0;
    for (std::size_t i = 0;
         i < matrix.row_labels.size() && next < result.row_labels.size(); ++i) {
      if (matrix.row_labels[i] == result.row_labels[next]) {
        matrix_row.push_back(Eigen::Index(i));
        kept_channels.push_back(matrix.row_channels[i]);
        ++next;
      }
    }
    if (matrix_row.size() != result.row_labels.size())
      throw LabelMismatch("factorization rows not found in the matrix");
  }

  // Rank kept rows by total views, ties toward the smaller label.
  std::vector<std::size_t> order(matrix_row.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> totals(matrix_row.size());
  for (std::size_t r = 0; r < matrix_row.size(); ++r)
    totals[r] = matrix.data.row(matrix_row[r]).sum();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (totals[a] != totals[b]) return totals[a] > totals[b];
    return result.row_labels[a] < result.row_labels[b];
  });
  if (order.size() > max_rows) order.resize(max_rows);

  const std::vector<ChannelClass> labels =
      label_components(result.W, kept_channels, mode);

  HeatmapData heatmap;
  const Eigen::Index p = result.rank();
  for (Eigen::Index k = 0; k < p; ++k)
    heatmap.col_labels.push_back(std::to_string(k) + ":" +
                                 to_string(labels[std::size_t(k)]));
  heatmap.raw.resize(Eigen::Index(order.size()), p);
  heatmap.normalized.resize(Eigen::Index(order.size()), p);
  for (std::size_t r = 0; r < order.size(); ++r) {
    heatmap.row_labels.push_back(result.row_labels[order[r]]);
    const auto row = result.W.row(Eigen::Index(order[r]));
    heatmap.raw.row(Eigen::Index(r)) = row;
    const double sum = row.sum();
    heatmap.normalized.row(Eigen::Index(r)) =
        sum > 0.0 ? (row / sum).eval() : row;
  }
  return heatmap;
}

std::string heatmap_csv(const HeatmapData& heatmap, bool normalized) {
  const Eigen::MatrixXd& cells = normalized ? heatmap.normalized : heatmap.raw;
  std::string out = "referral";
  for (Eigen::Index k = 0; k < cells.cols(); ++k)
    out += ",component_" + std::to_string(k);
  out += '\n';
  for (Eigen::Index i = 0; i < cells.rows(); ++i) {
    out += detail::csv_escape(heatmap.row_labels[std::size_t(i)]);
    for (Eigen::Index k = 0; k < cells.cols(); ++k) {
      out += ',';
      out += detail::format_double(cells(i, k));
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const HeatmapData& heatmap) {
  constexpr int kCellW = 56, kCellH = 24;
  constexpr int kLeft = 200, kTop = 72, kPad = 8;
  const int rows = int(heatmap.normalized.rows());
  const int cols = int(heatmap.normalized.cols());
  const int width = kLeft + cols * kCellW + kPad;
  const int height = kTop + rows * kCellH + kPad;

  std::string svg;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" font-family=\"sans-serif\" font-size=\"11\">\n",
                width, height);
  svg += buf;

  for (int k = 0; k < cols; ++k) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" transform=\"rotate(-30 %d %d)\">%s</text>\n",
                  kLeft + k * kCellW + 4, kTop - 8, kLeft + k * kCellW + 4,
                  kTop - 8,
                  detail::xml_escape(heatmap.col_labels[std::size_t(k)]).c_str());
    svg += buf;
  }

  for (int i = 0; i < rows; ++i) {
    std::snprintf(buf, sizeof(buf), "<text x=\"%d\" y=\"%d\" text-anchor=\"end\">%s</text>\n",
                  kLeft - 6, kTop + i * kCellH + kCellH / 2 + 4,
                  detail::xml_escape(heatmap.row_labels[std::size_t(i)]).c_str());
    svg += buf;
    for (int k = 0; k < cols; ++k) {
      // Linear ramp from white to a dark blue.
      const double v =
          std::clamp(heatmap.normalized(Eigen::Index(i), Eigen::Index(k)), 0.0, 1.0);
      const int r = int(std::lround(255.0 + (8.0 - 255.0) * v));
      const int g = int(std::lround(255.0 + (48.0 - 255.0) * v));
      const int b = int(std::lround(255.0 + (107.0 - 255.0) * v));
      std::snprintf(buf, sizeof(buf),
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                    "fill=\"#%02x%02x%02x\" stroke=\"#cccccc\"/>\n",
                    kLeft + k * kCellW, kTop + i * kCellH, kCellW, kCellH, r,
                    g, b);
      svg += buf;
    }
  }
  svg += "</svg>\n";
  return svg;
}

std::string personas_report_json(const std::vector<Persona>& personas,
                                 const ChannelSummary& summary) {
  ordered_json persona_docs = ordered_json::array();
  for (const Persona& persona : personas) {
    ordered_json scores;
    for (std::size_t ch = 0; ch < kChannelCount; ++ch)
      scores[to_string(kChannelOrder[ch])] = persona.channel_scores[ch];
    persona_docs.push_back(
        {{"component_index", persona.component_index},
         {"channel_label", to_string(persona.channel_label)},
         {"channel_scores", std::move(scores)},
         {"preferred_video_type", persona.top_video_types.empty()
                                      ? ordered_json()
                                      : ordered_json(persona.top_video_types
                                                         .front()
                                                         .first)},
         {"top_referrals", ranking_to_json(persona.top_referrals)},
         {"top_video_types", ranking_to_json(persona.top_video_types)}});
  }
  const ordered_json doc{{"channels", summary_to_json(summary)},
                         {"personas", std::move(persona_docs)}};
  return doc.dump(2) + "\n";
}

}  // namespace archetype
