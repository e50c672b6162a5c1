#pragma once

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "archetype/errors.hpp"

namespace archetype {

// The five acquisition channels. Declaration order is the tie-break order
// used everywhere a tie between channels must be broken.
enum class ChannelClass : int { Search = 0, Referral, Direct, Other, Social };

inline constexpr std::size_t kChannelCount = 5;

inline constexpr std::array<ChannelClass, kChannelCount> kChannelOrder{
    ChannelClass::Search, ChannelClass::Referral, ChannelClass::Direct,
    ChannelClass::Other, ChannelClass::Social};

const char* to_string(ChannelClass channel);
std::optional<ChannelClass> channel_from_string(std::string_view name);

// One analytics log row after parsing.
struct ViewRecord {
  std::chrono::year_month_day date{};
  std::string source;
  std::string medium;
  std::string video_type;
  std::int64_t views = 0;
  std::int64_t watch_seconds = 0;
};

// Referral-group x video-type matrix of aggregated view counts, with the
// channel class of each row and per-row watch-time totals carried alongside.
// Entries are non-negative; matrices built from logs hold exact integers.
struct ViewershipMatrix {
  std::vector<std::string> row_labels;
  std::vector<ChannelClass> row_channels;
  std::vector<std::string> col_labels;
  Eigen::MatrixXd data;  // rows() x cols(), non-negative
  std::vector<double> row_watch_seconds;

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
  double total_views() const { return data.sum(); }
};

// Parses CSV with header `date,source,medium,video_type,views,watch_seconds`
// (any column order, extra columns ignored). Fields are trimmed; quoted
// fields may contain commas. Throws MissingColumn or BadValue with the
// 1-based line number.
std::vector<ViewRecord> parse_log(std::istream& input);

// Lower-cased referral sources treated as social platforms when the medium
// alone does not say so.
const std::set<std::string>& default_social_domains();

// Maps (source, medium) to a channel. Total and case-insensitive:
//   medium "organic"                                  -> Search
//   source "(direct)" + medium "(none)"/"(not set)"   -> Direct
//   medium "social", or "referral" from a social host -> Social
//   medium "referral" otherwise                       -> Referral
//   anything else (including "email")                 -> Other
ChannelClass classify_channel(
    std::string_view source, std::string_view medium,
    const std::set<std::string>& social_domains = default_social_domains());

// Aggregates records into a matrix. Rows are keyed by source, columns by
// video type, both in first-appearance order; a row's channel comes from its
// first record. Throws EmptyInput when there are no records.
ViewershipMatrix build_matrix(
    const std::vector<ViewRecord>& records,
    const std::set<std::string>& social_domains = default_social_domains());

// Key-value config file; recognizes `social_domains` as a comma-separated
// list. Lines starting with '#' are comments. Unknown keys are reported to
// the warning callback (may be null).
struct IngestConfig {
  std::set<std::string> social_domains = default_social_domains();
};
IngestConfig load_ingest_config(std::istream& input,
                                std::ostream* warnings = nullptr);

// True when the two matrices contain the same rows and columns up to
// reordering, with identical cells and row watch totals. Channels are not
// compared: they are recomputed from (source, medium) on ingest and the log
// format cannot represent every channel for arbitrary labels.
bool matrices_equal_after_alignment(const ViewershipMatrix& a,
                                    const ViewershipMatrix& b);

}  // namespace archetype
