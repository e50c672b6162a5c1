#include "archetype/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace archetype {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw FormatError("invalid JSON document");
  return doc;
}

// Surfaces nlohmann type errors as FormatError.
template <typename Fn>
auto decoding(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end())
    throw FormatError("missing field \"" + std::string(key) + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& value, const char* key) {
  if (!value.is_array())
    throw FormatError("field \"" + std::string(key) + "\" must be an array");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string())
      throw FormatError("field \"" + std::string(key) +
                        "\" must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const json& value, const char* key) {
  if (!value.is_array())
    throw FormatError("field \"" + std::string(key) + "\" must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number())
      throw FormatError("field \"" + std::string(key) +
                        "\" must contain numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

std::vector<ChannelClass> channel_list(const json& value, const char* key) {
  std::vector<ChannelClass> out;
  for (const auto& name : string_list(value, key)) {
    const auto ch = channel_from_string(name);
    if (!ch) throw FormatError("unknown channel \"" + name + "\"");
    out.push_back(*ch);
  }
  return out;
}

ordered_json matrix_rows(const Eigen::MatrixXd& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

Eigen::MatrixXd matrix_from_rows(const std::vector<double>& values,
                                 std::size_t rows, std::size_t cols,
                                 const char* key) {
  if (values.size() != rows * cols)
    throw FormatError("field \"" + std::string(key) + "\" has " +
                      std::to_string(values.size()) + " values, expected " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  Eigen::MatrixXd m;
  m.resize(Eigen::Index(rows), Eigen::Index(cols));
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = values[n++];
  return m;
}

void require_non_negative(const Eigen::MatrixXd& m, const char* key) {
  if ((m.array() < 0.0).any())
    throw FormatError("field \"" + std::string(key) +
                      "\" contains negative entries");
}

}  // namespace

std::string matrix_to_json(const ViewershipMatrix& matrix) {
  ordered_json channels = ordered_json::array();
  for (ChannelClass ch : matrix.row_channels) channels.push_back(to_string(ch));
  const ordered_json doc{{"row_labels", matrix.row_labels},
                         {"row_channels", std::move(channels)},
                         {"col_labels", matrix.col_labels},
                         {"data", matrix_rows(matrix.data)},
                         {"row_watch_seconds", matrix.row_watch_seconds}};
  return doc.dump(2) + "\n";
}

ViewershipMatrix matrix_from_json(std::string_view text) {
  return decoding([&] {
  const json doc = parse(text);
  ViewershipMatrix m;
  m.row_labels = string_list(field(doc, "row_labels"), "row_labels");
  m.row_channels = channel_list(field(doc, "row_channels"), "row_channels");
  m.col_labels = string_list(field(doc, "col_labels"), "col_labels");
  m.data = matrix_from_rows(number_list(field(doc, "data"), "data"),
                            m.row_labels.size(), m.col_labels.size(), "data");
  m.row_watch_seconds =
      number_list(field(doc, "row_watch_seconds"), "row_watch_seconds");

  if (m.row_channels.size() != m.row_labels.size())
    throw FormatError("row_channels length does not match row_labels");
  if (m.row_watch_seconds.size() != m.row_labels.size())
    throw FormatError("row_watch_seconds length does not match row_labels");
  require_non_negative(m.data, "data");
  for (double w : m.row_watch_seconds)
    if (w < 0.0) throw FormatError("row_watch_seconds contains negatives");
  return m;
  });
}

std::string factors_to_json(const FactorizationResult& result) {
  const ordered_json doc{{"row_labels", result.row_labels},
                         {"col_labels", result.col_labels},
                         {"rank", result.rank()},
                         {"W", matrix_rows(result.W)},
                         {"H", matrix_rows(result.H)},
                         {"final_error", result.final_error},
                         {"iterations", result.iterations},
                         {"restart_index", result.restart_index},
                         {"dropped_rows", result.dropped_rows},
                         {"dropped_cols", result.dropped_cols}};
  return doc.dump(2) + "\n";
}

FactorizationResult factors_from_json(std::string_view text) {
  return decoding([&] {
  const json doc = parse(text);
  FactorizationResult r;
  r.row_labels = string_list(field(doc, "row_labels"), "row_labels");
  r.col_labels = string_list(field(doc, "col_labels"), "col_labels");
  const auto& rank_field = field(doc, "rank");
  if (!rank_field.is_number_integer() || rank_field.get<int>() < 1)
    throw FormatError("field \"rank\" must be a positive integer");
  const auto rank = std::size_t(rank_field.get<int>());
  r.W = matrix_from_rows(number_list(field(doc, "W"), "W"),
                         r.row_labels.size(), rank, "W");
  r.H = matrix_from_rows(number_list(field(doc, "H"), "H"), rank,
                         r.col_labels.size(), "H");
  require_non_negative(r.W, "W");
  require_non_negative(r.H, "H");
  r.final_error = field(doc, "final_error").get<double>();
  r.iterations = field(doc, "iterations").get<int>();
  r.restart_index = field(doc, "restart_index").get<int>();
  r.dropped_rows = string_list(field(doc, "dropped_rows"), "dropped_rows");
  r.dropped_cols = string_list(field(doc, "dropped_cols"), "dropped_cols");
  return r;
  });
}

std::string personas_to_json(const std::vector<Persona>& personas) {
  ordered_json docs = ordered_json::array();
  for (const Persona& persona : personas) {
    ordered_json scores;
    for (std::size_t ch = 0; ch < kChannelCount; ++ch)
      scores[to_string(kChannelOrder[ch])] = persona.channel_scores[ch];
    ordered_json referrals = ordered_json::array();
    for (const auto& [label, weight] : persona.top_referrals)
      referrals.push_back(ordered_json::array({label, weight}));
    ordered_json videos = ordered_json::array();
    for (const auto& [label, weight] : persona.top_video_types)
      videos.push_back(ordered_json::array({label, weight}));
    docs.push_back({{"component_index", persona.component_index},
                    {"channel_label", to_string(persona.channel_label)},
                    {"channel_scores", std::move(scores)},
                    {"top_referrals", std::move(referrals)},
                    {"top_video_types", std::move(videos)}});
  }
  return docs.dump(2) + "\n";
}

std::vector<Persona> personas_from_json(std::string_view text) {
  return decoding([&] {
  const json doc = parse(text);
  if (!doc.is_array()) throw FormatError("personas document must be an array");

  std::vector<Persona> personas;
  for (const auto& item : doc) {
    Persona persona;
    persona.component_index = field(item, "component_index").get<int>();
    const auto label =
        channel_from_string(field(item, "channel_label").get<std::string>());
    if (!label) throw FormatError("unknown channel_label");
    persona.channel_label = *label;

    const json& scores = field(item, "channel_scores");
    for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
      const char* name = to_string(kChannelOrder[ch]);
      persona.channel_scores[ch] = field(scores, name).get<double>();
    }

    auto ranking = [](const json& value,
                      const char* key) -> std::vector<std::pair<std::string, double>> {
      if (!value.is_array())
        throw FormatError("field \"" + std::string(key) + "\" must be an array");
      std::vector<std::pair<std::string, double>> out;
      for (const auto& pair : value) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_number())
          throw FormatError("field \"" + std::string(key) +
                            "\" must contain [label, weight] pairs");
        out.emplace_back(pair[0].get<std::string>(), pair[1].get<double>());
      }
      return out;
    };
    persona.top_referrals = ranking(field(item, "top_referrals"), "top_referrals");
    persona.top_video_types =
        ranking(field(item, "top_video_types"), "top_video_types");
    personas.push_back(std::move(persona));
  }
  return personas;
  });
}

std::string truth_to_json(const PlantedModel& model) {
  ordered_json channels = ordered_json::array();
  for (ChannelClass ch : model.row_channels) channels.push_back(to_string(ch));
  const ordered_json doc{
      {"row_labels", model.row_labels},
      {"col_labels", model.col_labels},
      {"row_channels", std::move(channels)},
      {"W_true", matrix_rows(model.W_true)},
      {"H_true", matrix_rows(model.H_true)},
      {"noise", model.noise == NoiseKind::poisson ? "poisson" : "none"},
      {"scale", model.scale},
      {"seed", model.seed}};
  return doc.dump(2) + "\n";
}

PlantedModel truth_from_json(std::string_view text) {
  return decoding([&] {
  const json doc = parse(text);
  PlantedModel model;
  model.row_labels = string_list(field(doc, "row_labels"), "row_labels");
  model.col_labels = string_list(field(doc, "col_labels"), "col_labels");
  model.row_channels = channel_list(field(doc, "row_channels"), "row_channels");
  if (model.row_channels.size() != model.row_labels.size())
    throw FormatError("row_channels length does not match row_labels");

  const auto w = number_list(field(doc, "W_true"), "W_true");
  const auto h = number_list(field(doc, "H_true"), "H_true");
  if (model.row_labels.empty() || w.empty())
    throw FormatError("planted model must not be empty");
  if (w.size() % model.row_labels.size() != 0)
    throw FormatError("W_true size does not divide by row count");
  const std::size_t rank = w.size() / model.row_labels.size();
  model.W_true = matrix_from_rows(w, model.row_labels.size(), rank, "W_true");
  model.H_true = matrix_from_rows(h, rank, model.col_labels.size(), "H_true");

  const std::string noise = field(doc, "noise").get<std::string>();
  if (noise == "poisson") model.noise = NoiseKind::poisson;
  else if (noise == "none") model.noise = NoiseKind::none;
  else throw FormatError("noise must be \"none\" or \"poisson\"");
  model.scale = field(doc, "scale").get<double>();
  if (!(model.scale > 0.0)) throw FormatError("scale must be positive");
  model.seed = field(doc, "seed").get<std::uint64_t>();
  return model;
  });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return std::move(buffer).str();
}

void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place");
  }
}

}  // namespace archetype
