#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "archetype/ingest.hpp"
#include "archetype/rng.hpp"

using namespace archetype;

namespace {

std::vector<ViewRecord> parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_log(in);
}

constexpr const char* kHeader =
    "date,source,medium,video_type,views,watch_seconds\n";

}  // namespace

TEST_CASE("parse_log maps one data row to one record") {
  const auto records = parse_string(
      std::string(kHeader) +
      "2016-06-24,t.co,referral,exiting the european union committee,100,9600\n");
  REQUIRE(records.size() == 1);
  const ViewRecord& r = records[0];
  CHECK(r.source == "t.co");
  CHECK(r.medium == "referral");
  CHECK(r.video_type == "exiting the european union committee");
  CHECK(r.views == 100);
  CHECK(r.watch_seconds == 9600);
  CHECK(int(r.date.year()) == 2016);
  CHECK(unsigned(r.date.month()) == 6);
  CHECK(unsigned(r.date.day()) == 24);
}

TEST_CASE("parse_log on a header-only file yields an empty list") {
  CHECK(parse_string(kHeader).empty());
}

TEST_CASE("parse_log trims surrounding whitespace") {
  const auto records = parse_string(std::string(kHeader) +
                                    "2016-06-24 , google , organic , pmqs , 5 , 50\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].source == "google");
  CHECK(records[0].video_type == "pmqs");
  CHECK(records[0].views == 5);
}

TEST_CASE("parse_log handles quoted fields with commas") {
  const auto records = parse_string(
      std::string(kHeader) +
      "2016-06-24,google,organic,\"business, innovation and skills "
      "committee\",7,70\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].video_type == "business, innovation and skills committee");
}

TEST_CASE("parse_log rejects negative views with the line number") {
  try {
    parse_string(std::string(kHeader) +
                 "2016-06-24,google,organic,pmqs,5,50\n"
                 "2016-06-24,google,organic,pmqs,-5,50\n");
    FAIL("expected BadValue");
  } catch (const BadValue& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("parse_log rejects unparseable dates") {
  CHECK_THROWS_AS(parse_string(std::string(kHeader) +
                               "2016-13-01,google,organic,pmqs,5,50\n"),
                  BadValue);
  CHECK_THROWS_AS(parse_string(std::string(kHeader) +
                               "2015-02-29,google,organic,pmqs,5,50\n"),
                  BadValue);
  CHECK_THROWS_AS(parse_string(std::string(kHeader) +
                               "24/06/2016,google,organic,pmqs,5,50\n"),
                  BadValue);
}

TEST_CASE("parse_log rejects empty source and video_type") {
  CHECK_THROWS_AS(
      parse_string(std::string(kHeader) + "2016-06-24, ,organic,pmqs,5,50\n"),
      BadValue);
  CHECK_THROWS_AS(
      parse_string(std::string(kHeader) + "2016-06-24,google,organic,,5,50\n"),
      BadValue);
}

TEST_CASE("parse_log requires every column") {
  std::istringstream in("date,source,medium,video_type,views\n");
  try {
    parse_log(in);
    FAIL("expected MissingColumn");
  } catch (const MissingColumn& e) {
    CHECK(e.column == "watch_seconds");
  }
}

TEST_CASE("parse_log accepts reordered header columns") {
  const auto records = parse_string(
      "views,watch_seconds,date,source,medium,video_type\n"
      "5,50,2016-06-24,google,organic,pmqs\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].views == 5);
  CHECK(records[0].source == "google");
}

TEST_CASE("classify_channel implements the grouping rules") {
  CHECK(classify_channel("t.co", "referral") == ChannelClass::Social);
  CHECK(classify_channel("google", "organic") == ChannelClass::Search);
  CHECK(classify_channel("(direct)", "(none)") == ChannelClass::Direct);
  CHECK(classify_channel("(direct)", "(not set)") == ChannelClass::Direct);
  CHECK(classify_channel("parliament.uk", "referral") == ChannelClass::Referral);
  CHECK(classify_channel("newsletter", "email") == ChannelClass::Other);
  CHECK(classify_channel("anything", "social") == ChannelClass::Social);
  CHECK(classify_channel("google", "(none)") == ChannelClass::Other);
}

TEST_CASE("classify_channel is case-insensitive") {
  CHECK(classify_channel("Google", "Organic") == ChannelClass::Search);
  CHECK(classify_channel("T.CO", "Referral") == ChannelClass::Social);
  CHECK(classify_channel("(Direct)", "(None)") == ChannelClass::Direct);
}

TEST_CASE("classify_channel honors a custom social set") {
  const std::set<std::string> socials{"example.social"};
  CHECK(classify_channel("example.social", "referral", socials) ==
        ChannelClass::Social);
  CHECK(classify_channel("t.co", "referral", socials) == ChannelClass::Referral);
}

TEST_CASE("build_matrix keys rows by source and columns by video type") {
  std::vector<ViewRecord> records;
  ViewRecord a;
  a.source = "t.co";
  a.medium = "referral";
  a.video_type = "brexit committee";
  a.views = 100;
  a.watch_seconds = 9600;
  ViewRecord b;
  b.source = "google";
  b.medium = "organic";
  b.video_type = "brexit committee";
  b.views = 50;
  b.watch_seconds = 1000;
  records = {a, b};

  const ViewershipMatrix m = build_matrix(records);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 1);
  CHECK(m.data(0, 0) == 100.0);
  CHECK(m.data(1, 0) == 50.0);
  CHECK(m.row_labels == std::vector<std::string>{"t.co", "google"});
  CHECK(m.row_channels[0] == ChannelClass::Social);
  CHECK(m.row_channels[1] == ChannelClass::Search);
  CHECK(m.row_watch_seconds[0] == 9600.0);
}

TEST_CASE("build_matrix adds repeated (source, video_type) cells") {
  ViewRecord a;
  a.source = "google";
  a.medium = "organic";
  a.video_type = "pmqs";
  a.views = 3;
  ViewRecord b = a;
  b.views = 4;
  const ViewershipMatrix m = build_matrix({a, b});
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m.data(0, 0) == 7.0);
}

TEST_CASE("build_matrix rejects empty input") {
  CHECK_THROWS_AS(build_matrix({}), EmptyInput);
}

TEST_CASE("10k-row fixture conserves the independently summed views column") {
  // Fixture without quoting so a naive split is a valid independent check.
  SeededRng rng(2024);
  std::string csv = kHeader;
  for (int i = 0; i < 10000; ++i) {
    const int src = int(rng.raw() % 97);
    const int vid = int(rng.raw() % 53);
    const long long views = (long long)(rng.raw() % 1000);
    const long long watch = (long long)(rng.raw() % 100000);
    csv += "2016-06-24,src_" + std::to_string(src) + ",referral,vid_" +
           std::to_string(vid) + "," + std::to_string(views) + "," +
           std::to_string(watch) + "\n";
  }

  // Independent oracle: one pass over the raw text, summing field 5.
  long long expected = 0;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::size_t pos = 0;
    for (int f = 0; f < 4; ++f) pos = line.find(',', pos) + 1;
    expected += std::stoll(line.substr(pos, line.find(',', pos) - pos));
  }

  const auto records = parse_string(csv);
  const ViewershipMatrix m = build_matrix(records);
  CHECK(m.total_views() == double(expected));
}

TEST_CASE("shuffling records only reorders rows and columns") {
  SeededRng rng(7);
  std::vector<ViewRecord> records;
  for (int i = 0; i < 200; ++i) {
    ViewRecord r;
    r.source = "src_" + std::to_string(rng.raw() % 23);
    r.medium = "referral";
    r.video_type = "vid_" + std::to_string(rng.raw() % 11);
    r.views = std::int64_t(rng.raw() % 500);
    r.watch_seconds = std::int64_t(rng.raw() % 10000);
    records.push_back(std::move(r));
  }
  const ViewershipMatrix original = build_matrix(records);

  std::mt19937 shuffler(99);
  std::shuffle(records.begin(), records.end(), shuffler);
  const ViewershipMatrix shuffled = build_matrix(records);

  CHECK(matrices_equal_after_alignment(original, shuffled));
  // Channels ride along with the labels (media are consistent per source).
  for (std::size_t i = 0; i < original.row_labels.size(); ++i) {
    const auto it = std::find(shuffled.row_labels.begin(),
                              shuffled.row_labels.end(), original.row_labels[i]);
    REQUIRE(it != shuffled.row_labels.end());
    const auto j = std::size_t(it - shuffled.row_labels.begin());
    CHECK(original.row_channels[i] == shuffled.row_channels[j]);
  }
}

TEST_CASE("matrices_equal_after_alignment spots real differences") {
  ViewRecord a;
  a.source = "google";
  a.medium = "organic";
  a.video_type = "pmqs";
  a.views = 3;
  const ViewershipMatrix m1 = build_matrix({a});
  ViewRecord b = a;
  b.views = 4;
  const ViewershipMatrix m2 = build_matrix({b});
  CHECK_FALSE(matrices_equal_after_alignment(m1, m2));

  ViewRecord c = a;
  c.source = "bing";
  const ViewershipMatrix m3 = build_matrix({c});
  CHECK_FALSE(matrices_equal_after_alignment(m1, m3));
}

TEST_CASE("load_ingest_config reads the social domain list") {
  std::istringstream in(
      "# comment\n"
      "social_domains = a.example, B.Example ,c.example\n"
      "mystery_knob = 3\n");
  std::ostringstream warnings;
  const IngestConfig config = load_ingest_config(in, &warnings);
  CHECK(config.social_domains ==
        std::set<std::string>{"a.example", "b.example", "c.example"});
  CHECK(warnings.str().find("mystery_knob") != std::string::npos);
}

TEST_CASE("default social domains cover the big platforms") {
  const auto& domains = default_social_domains();
  for (const char* d : {"t.co", "twitter.com", "facebook.com", "m.facebook.com",
                        "reddit.com", "youtube.com", "lnkd.in"})
    CHECK(domains.count(d) == 1);
}
