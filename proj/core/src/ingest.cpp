#include "archetype/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "text_util.hpp"

namespace archetype {

namespace {

using detail::csv_split;
using detail::to_lower;
using detail::trim;

constexpr const char* kColumns[] = {"date",       "source", "medium",
                                    "video_type", "views",  "watch_seconds"};

std::int64_t parse_count(std::string_view field, std::string_view name,
                         std::size_t line) {
  if (field.empty())
    throw BadValue(std::string(name) + " is empty", line);
  std::int64_t value = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size() ||
      value < 0)
    throw BadValue(std::string(name) + " is not a non-negative integer: \"" +
                       std::string(field) + "\"",
                   line);
  return value;
}

std::chrono::year_month_day parse_date(std::string_view field,
                                       std::size_t line) {
  // Strict ISO-8601 calendar date: YYYY-MM-DD.
  auto fail = [&]() -> std::chrono::year_month_day {
    throw BadValue("unparseable date: \"" + std::string(field) + "\"", line);
  };
  if (field.size() != 10 || field[4] != '-' || field[7] != '-') return fail();
  int y = 0, m = 0, d = 0;
  auto num = [&](std::string_view s, int& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
  };
  if (!num(field.substr(0, 4), y) || !num(field.substr(5, 2), m) ||
      !num(field.substr(8, 2), d))
    return fail();
  const std::chrono::year_month_day date{std::chrono::year{y},
                                         std::chrono::month{unsigned(m)},
                                         std::chrono::day{unsigned(d)}};
  if (!date.ok()) return fail();
  return date;
}

}  // namespace

const char* to_string(ChannelClass channel) {
  switch (channel) {
    case ChannelClass::Search: return "Search";
    case ChannelClass::Referral: return "Referral";
    case ChannelClass::Direct: return "Direct";
    case ChannelClass::Other: return "Other";
    case ChannelClass::Social: return "Social";
  }
  return "?";
}

std::optional<ChannelClass> channel_from_string(std::string_view name) {
  for (ChannelClass ch : kChannelOrder)
    if (name == to_string(ch)) return ch;
  return std::nullopt;
}

std::vector<ViewRecord> parse_log(std::istream& input) {
  std::string line;
  std::size_t line_no = 0;

  // Header: locate the required columns by name.
  if (!std::getline(input, line))
    throw MissingColumn(kColumns[0]);
  ++line_no;
  const auto header = csv_split(line);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i)
    index.emplace(std::string(trim(header[i])), i);
  std::array<std::size_t, 6> col{};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto it = index.find(kColumns[i]);
    if (it == index.end()) throw MissingColumn(kColumns[i]);
    col[i] = it->second;
  }

  std::vector<ViewRecord> records;
  while (std::getline(input, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = csv_split(line);
    const std::size_t needed =
        1 + *std::max_element(col.begin(), col.end());
    if (fields.size() < needed)
      throw BadValue("expected at least " + std::to_string(needed) +
                         " fields, got " + std::to_string(fields.size()),
                     line_no);

    ViewRecord rec;
    rec.date = parse_date(trim(fields[col[0]]), line_no);
    rec.source = std::string(trim(fields[col[1]]));
    rec.medium = std::string(trim(fields[col[2]]));
    rec.video_type = std::string(trim(fields[col[3]]));
    rec.views = parse_count(trim(fields[col[4]]), "views", line_no);
    rec.watch_seconds =
        parse_count(trim(fields[col[5]]), "watch_seconds", line_no);
    if (rec.source.empty()) throw BadValue("source is empty", line_no);
    if (rec.video_type.empty()) throw BadValue("video_type is empty", line_no);
    records.push_back(std::move(rec));
  }
  return records;
}

const std::set<std::string>& default_social_domains() {
  static const std::set<std::string> domains{
      "t.co",        "twitter.com", "facebook.com", "m.facebook.com",
      "reddit.com",  "youtube.com", "lnkd.in"};
  return domains;
}

ChannelClass classify_channel(std::string_view source, std::string_view medium,
                              const std::set<std::string>& social_domains) {
  const std::string m = to_lower(trim(medium));
  const std::string s = to_lower(trim(source));
  if (m == "organic") return ChannelClass::Search;
  if (s == "(direct)" && (m == "(none)" || m == "(not set)"))
    return ChannelClass::Direct;
  if (m == "social") return ChannelClass::Social;
  if (m == "referral")
    return social_domains.count(s) ? ChannelClass::Social
                                   : ChannelClass::Referral;
  return ChannelClass::Other;
}

ViewershipMatrix build_matrix(const std::vector<ViewRecord>& records,
                              const std::set<std::string>& social_domains) {
  if (records.empty()) throw EmptyInput("no records to aggregate");

  ViewershipMatrix m;
  std::unordered_map<std::string, Eigen::Index> row_of, col_of;
  for (const ViewRecord& rec : records) {
    if (row_of.emplace(rec.source, m.row_labels.size()).second) {
      m.row_labels.push_back(rec.source);
      m.row_channels.push_back(
          classify_channel(rec.source, rec.medium, social_domains));
    }
    if (col_of.emplace(rec.video_type, m.col_labels.size()).second)
      m.col_labels.push_back(rec.video_type);
  }

  m.data = Eigen::MatrixXd::Zero(Eigen::Index(m.row_labels.size()),
                                 Eigen::Index(m.col_labels.size()));
  m.row_watch_seconds.assign(m.row_labels.size(), 0.0);
  for (const ViewRecord& rec : records) {
    const Eigen::Index i = row_of.at(rec.source);
    const Eigen::Index j = col_of.at(rec.video_type);
    m.data(i, j) += static_cast<double>(rec.views);
    m.row_watch_seconds[std::size_t(i)] +=
        static_cast<double>(rec.watch_seconds);
  }
  return m;
}

IngestConfig load_ingest_config(std::istream& input, std::ostream* warnings) {
  IngestConfig config;
  std::string line;
  while (std::getline(input, line)) {
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      if (warnings) *warnings << "config: ignoring line without '=': "
                              << stripped << "\n";
      continue;
    }
    const auto key = trim(stripped.substr(0, eq));
    const auto value = trim(stripped.substr(eq + 1));
    if (key == "social_domains") {
      config.social_domains.clear();
      for (const auto& item : csv_split(std::string(value))) {
        const auto domain = trim(item);
        if (!domain.empty()) config.social_domains.insert(to_lower(domain));
      }
    } else if (warnings) {
      *warnings << "config: unknown key \"" << key << "\"\n";
    }
  }
  return config;
}

bool matrices_equal_after_alignment(const ViewershipMatrix& a,
                                    const ViewershipMatrix& b) {
  if (a.row_labels.size() != b.row_labels.size() ||
      a.col_labels.size() != b.col_labels.size())
    return false;

  std::unordered_map<std::string, Eigen::Index> row_of, col_of;
  for (std::size_t i = 0; i < b.row_labels.size(); ++i)
    row_of.emplace(b.row_labels[i], Eigen::Index(i));
  for (std::size_t j = 0; j < b.col_labels.size(); ++j)
    col_of.emplace(b.col_labels[j], Eigen::Index(j));
  if (row_of.size() != b.row_labels.size() ||
      col_of.size() != b.col_labels.size())
    return false;

  std::vector<Eigen::Index> row_map(a.row_labels.size());
  std::vector<Eigen::Index> col_map(a.col_labels.size());
  for (std::size_t i = 0; i < a.row_labels.size(); ++i) {
    const auto it = row_of.find(a.row_labels[i]);
    if (it == row_of.end()) return false;
    row_map[i] = it->second;
  }
  for (std::size_t j = 0; j < a.col_labels.size(); ++j) {
    const auto it = col_of.find(a.col_labels[j]);
    if (it == col_of.end()) return false;
    col_map[j] = it->second;
  }

  for (std::size_t i = 0; i < a.row_labels.size(); ++i) {
    if (a.row_watch_seconds[i] != b.row_watch_seconds[std::size_t(row_map[i])])
      return false;
    for (std::size_t j = 0; j < a.col_labels.size(); ++j) {
      if (a.data(Eigen::Index(i), Eigen::Index(j)) !=
          b.data(row_map[i], col_map[j]))
        return false;
    }
  }
  return true;
}

}  // namespace archetype
