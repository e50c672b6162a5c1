#include "archetype/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "archetype/rng.hpp"
#include "text_util.hpp"

namespace archetype {

namespace {

std::string padded_label(const char* prefix, Eigen::Index i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03lld", prefix,
                static_cast<long long>(i));
  return buf;
}

// Contiguous block of rows/columns owned by component k; the remainder goes
// to the last block.
Eigen::Index block_of(Eigen::Index i, Eigen::Index n, Eigen::Index p) {
  const Eigen::Index base = n / p;
  return std::min(i / base, p - 1);
}

// Integer shares proportional to weights, summing exactly to total
// (largest-remainder rounding, ties to the earliest entry).
std::vector<std::int64_t> apportion(std::int64_t total,
                                    const std::vector<std::int64_t>& weights) {
  const double weight_sum =
      double(std::accumulate(weights.begin(), weights.end(), std::int64_t{0}));
  std::vector<std::int64_t> shares(weights.size(), 0);
  if (weight_sum <= 0.0 || total <= 0) return shares;

  std::vector<double> fracs(weights.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = double(total) * double(weights[i]) / weight_sum;
    shares[i] = std::int64_t(std::floor(exact));
    fracs[i] = exact - double(shares[i]);
    assigned += shares[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fracs[a] > fracs[b]; });
  std::int64_t remainder = total - assigned;
  for (std::size_t i = 0; remainder > 0 && i < order.size(); ++i) {
    ++shares[order[i]];
    --remainder;
  }
  // Floating error can leave a residue; dump it on the largest share.
  if (remainder != 0 && !shares.empty()) {
    const auto largest =
        std::size_t(std::max_element(shares.begin(), shares.end()) - shares.begin());
    shares[largest] += remainder;
  }
  return shares;
}

const char* medium_for(ChannelClass channel) {
  switch (channel) {
    case ChannelClass::Search: return "organic";
    case ChannelClass::Referral: return "referral";
    case ChannelClass::Social: return "referral";
    case ChannelClass::Direct: return "(none)";
    case ChannelClass::Other: return "email";
  }
  return "(none)";
}

}  // namespace

PlantedModel gen_planted_factors(Eigen::Index g, Eigen::Index c,
                                 Eigen::Index p, std::uint64_t seed) {
  if (p < 1 || g < p || c < p)
    throw BadDimensions("gen_planted_factors requires g >= p >= 1 and c >= p (got g=" +
                        std::to_string(g) + ", c=" + std::to_string(c) +
                        ", p=" + std::to_string(p) + ")");

  PlantedModel model;
  model.seed = seed;
  SeededRng rng(seed);

  model.W_true.resize(g, p);
  for (Eigen::Index i = 0; i < g; ++i) {
    const Eigen::Index block = block_of(i, g, p);
    for (Eigen::Index k = 0; k < p; ++k)
      model.W_true(i, k) =
          k == block ? rng.uniform(0.5, 1.0) : rng.uniform(0.0, 0.05);
  }
  model.H_true.resize(p, c);
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const Eigen::Index block = block_of(j, c, p);
      model.H_true(k, j) =
          k == block ? rng.uniform(0.5, 1.0) : rng.uniform(0.0, 0.05);
    }
  }

  model.row_labels.reserve(std::size_t(g));
  model.row_channels.reserve(std::size_t(g));
  for (Eigen::Index i = 0; i < g; ++i) {
    model.row_labels.push_back(padded_label("ref_", i));
    model.row_channels.push_back(
        kChannelOrder[std::size_t(block_of(i, g, p) % kChannelCount)]);
  }
  model.col_labels.reserve(std::size_t(c));
  for (Eigen::Index j = 0; j < c; ++j)
    model.col_labels.push_back(padded_label("vid_", j));
  return model;
}

std::array<double, kChannelCount> default_watch_seconds_per_view() {
  // Indexed by kChannelOrder: Search, Referral, Direct, Other, Social.
  return {251.0, 191.0, 140.0, 140.0, 96.0};
}

ViewershipMatrix sample_views(
    const PlantedModel& model,
    const std::array<double, kChannelCount>& watch_per_view) {
  ViewershipMatrix m;
  m.row_labels = model.row_labels;
  m.row_channels = model.row_channels;
  m.col_labels = model.col_labels;

  const Eigen::MatrixXd product = model.W_true * model.H_true;
  if (model.noise == NoiseKind::none) {
    m.data = model.scale * product;
  } else {
    SeededRng rng(model.seed);
    m.data.resize(product.rows(), product.cols());
    for (Eigen::Index i = 0; i < product.rows(); ++i)
      for (Eigen::Index j = 0; j < product.cols(); ++j)
        m.data(i, j) = double(rng.poisson(model.scale * product(i, j)));
  }

  m.row_watch_seconds.resize(std::size_t(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    m.row_watch_seconds[std::size_t(i)] =
        m.data.row(i).sum() *
        watch_per_view[std::size_t(m.row_channels[std::size_t(i)])];
  return m;
}

void emit_log(const ViewershipMatrix& matrix, std::chrono::year_month_day date,
              std::ostream& out) {
  out << "date,source,medium,video_type,views,watch_seconds\n";

  char date_buf[16];
  std::snprintf(date_buf, sizeof(date_buf), "%04d-%02u-%02u",
                int(date.year()), unsigned(date.month()),
                unsigned(date.day()));

  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    std::vector<Eigen::Index> cols;
    std::vector<std::int64_t> views;
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      const std::int64_t v = std::llround(matrix.data(i, j));
      if (v > 0) {
        cols.push_back(j);
        views.push_back(v);
      }
    }
    if (cols.empty()) continue;

    const std::int64_t row_watch =
        std::llround(matrix.row_watch_seconds[std::size_t(i)]);
    const std::vector<std::int64_t> watch = apportion(row_watch, views);

    const std::string source =
        detail::csv_escape(matrix.row_labels[std::size_t(i)]);
    const char* medium = medium_for(matrix.row_channels[std::size_t(i)]);
    for (std::size_t n = 0; n < cols.size(); ++n) {
      out << date_buf << ',' << source << ',' << medium << ','
          << detail::csv_escape(matrix.col_labels[std::size_t(cols[n])]) << ','
          << views[n] << ',' << watch[n] << '\n';
    }
  }
}

}  // namespace archetype
