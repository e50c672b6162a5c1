#pragma once

// Shared helpers for the test suites.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "archetype/ingest.hpp"

namespace test_util {

// Wraps a raw matrix with generated labels; channels cycle through the five
// classes so channel-dependent code has something to chew on.
inline archetype::ViewershipMatrix wrap_matrix(const Eigen::MatrixXd& data) {
  archetype::ViewershipMatrix m;
  m.data = data;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    m.row_labels.push_back("row_" + std::to_string(i));
    m.row_channels.push_back(
        archetype::kChannelOrder[std::size_t(i) % archetype::kChannelCount]);
    m.row_watch_seconds.push_back(data.row(i).sum());
  }
  for (Eigen::Index j = 0; j < data.cols(); ++j)
    m.col_labels.push_back("col_" + std::to_string(j));
  return m;
}

inline archetype::ViewRecord make_record(std::string source, std::string medium,
                                         std::string video_type,
                                         std::int64_t views,
                                         std::int64_t watch_seconds = 0) {
  archetype::ViewRecord r;
  r.date = std::chrono::year_month_day{std::chrono::year{2016},
                                       std::chrono::month{6},
                                       std::chrono::day{24}};
  r.source = std::move(source);
  r.medium = std::move(medium);
  r.video_type = std::move(video_type);
  r.views = views;
  r.watch_seconds = watch_seconds;
  return r;
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("archetype_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace test_util
