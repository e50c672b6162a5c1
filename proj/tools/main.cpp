// Command-line front end wiring the pipeline end to end:
//   synth -> ingest -> factorize -> personas -> report
// Data goes only to files; progress and errors go to stderr.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "archetype/ingest.hpp"
#include "archetype/io.hpp"
#include "archetype/nmf.hpp"
#include "archetype/personas.hpp"
#include "archetype/report.hpp"
#include "archetype/synth.hpp"

namespace {

using namespace archetype;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitNumeric = 3;

std::chrono::year_month_day parse_iso_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char dash1 = 0, dash2 = 0;
  std::istringstream in(text);
  in >> y >> dash1 >> m >> dash2 >> d;
  std::chrono::year_month_day date{std::chrono::year{y}, std::chrono::month{m},
                                   std::chrono::day{d}};
  if (!in || dash1 != '-' || dash2 != '-' || !date.ok())
    throw FormatError("invalid date \"" + text + "\", expected YYYY-MM-DD");
  return date;
}

LabelMode parse_mode(const std::string& text) {
  if (text == "independent") return LabelMode::independent;
  if (text == "one_to_one") return LabelMode::one_to_one;
  if (text == "auto") return LabelMode::auto_select;
  throw FormatError("invalid mode \"" + text +
                    "\", expected independent, one_to_one or auto");
}

struct IngestOptions {
  std::string input, output, config;
};

struct FactorizeOptions {
  std::string matrix, output;
  FactorizationConfig config;
};

struct PersonasOptions {
  std::string factors, matrix, output;
  std::size_t top_referrals = 15;
  std::size_t top_videos = 5;
  std::string mode = "auto";
};

struct ReportOptions {
  std::string personas, matrix, factors;
  std::string summary, heatmap_csv, heatmap_raw_csv, heatmap_svg;
  std::string mode = "auto";
};

struct SynthOptions {
  long long rows = 100, cols = 200;
  int rank = 5;
  std::string noise = "poisson";
  double scale = 50.0;
  std::uint64_t seed = 7;
  std::string output, truth;
  std::string date = "2016-06-24";
};

int run_ingest(const IngestOptions& opt) {
  IngestConfig config;
  std::string config_path = opt.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("ARCHETYPE_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file " + config_path);
    config = load_ingest_config(in, &std::cerr);
  }

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + opt.input);
  const auto records = parse_log(in);
  const ViewershipMatrix matrix = build_matrix(records, config.social_domains);
  atomic_write_file(opt.output, matrix_to_json(matrix));
  std::cerr << "ingest: " << records.size() << " records -> " << matrix.rows()
            << "x" << matrix.cols() << " matrix, "
            << static_cast<long long>(matrix.total_views()) << " views\n";
  return kExitOk;
}

int run_factorize(const FactorizeOptions& opt) {
  const ViewershipMatrix matrix = matrix_from_json(read_file(opt.matrix));
  const FactorizationResult result = factorize(matrix, opt.config);
  atomic_write_file(opt.output, factors_to_json(result));
  std::cerr << "factorize: rank " << result.rank() << ", restart "
            << result.restart_index << " won with error "
            << result.final_error << " after " << result.iterations
            << " iterations";
  if (!result.dropped_rows.empty() || !result.dropped_cols.empty())
    std::cerr << " (dropped " << result.dropped_rows.size() << " rows, "
              << result.dropped_cols.size() << " cols)";
  std::cerr << "\n";
  return kExitOk;
}

int run_personas(const PersonasOptions& opt) {
  const FactorizationResult result = factors_from_json(read_file(opt.factors));
  const ViewershipMatrix matrix = matrix_from_json(read_file(opt.matrix));
  const auto personas = extract_personas(result, matrix, opt.top_referrals,
                                         opt.top_videos, parse_mode(opt.mode));
  atomic_write_file(opt.output, personas_to_json(personas));
  std::cerr << "personas: " << personas.size() << " components labeled\n";
  return kExitOk;
}

int run_report(const ReportOptions& opt) {
  const auto personas = personas_from_json(read_file(opt.personas));
  const ViewershipMatrix matrix = matrix_from_json(read_file(opt.matrix));
  const FactorizationResult result = factors_from_json(read_file(opt.factors));

  const ChannelSummary summary = summarize_channels(matrix);
  const HeatmapData heatmap =
      heatmap_data(result, matrix, 15, parse_mode(opt.mode));

  // Render everything before writing anything.
  const std::string report = personas_report_json(personas, summary);
  const std::string csv = heatmap_csv(heatmap, true);
  const std::string raw_csv =
      opt.heatmap_raw_csv.empty() ? std::string() : heatmap_csv(heatmap, false);
  const std::string svg = render_svg(heatmap);

  atomic_write_file(opt.summary, report);
  atomic_write_file(opt.heatmap_csv, csv);
  if (!opt.heatmap_raw_csv.empty())
    atomic_write_file(opt.heatmap_raw_csv, raw_csv);
  atomic_write_file(opt.heatmap_svg, svg);
  std::cerr << "report: " << heatmap.row_labels.size() << "x"
            << heatmap.col_labels.size() << " heatmap, "
            << personas.size() << " personas\n";
  return kExitOk;
}

int run_synth(const SynthOptions& opt) {
  PlantedModel model = gen_planted_factors(opt.rows, opt.cols, opt.rank, opt.seed);
  model.noise = opt.noise == "poisson" ? NoiseKind::poisson : NoiseKind::none;
  model.scale = opt.scale;
  const ViewershipMatrix matrix = sample_views(model);

  std::ostringstream log;
  emit_log(matrix, parse_iso_date(opt.date), log);
  atomic_write_file(opt.output, log.str());
  if (!opt.truth.empty()) atomic_write_file(opt.truth, truth_to_json(model));
  std::cerr << "synth: " << matrix.rows() << "x" << matrix.cols()
            << " planted matrix, "
            << static_cast<long long>(matrix.total_views()) << " views\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audience archetype toolkit: aggregate analytics view logs, "
               "factorize the viewership matrix and extract labeled "
               "archetypes"};
  app.require_subcommand(1);

  IngestOptions ingest_opt;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Aggregate a view log CSV into a matrix JSON");
  ingest_cmd->add_option("--input", ingest_opt.input, "View log CSV")
      ->required();
  ingest_cmd->add_option("--output", ingest_opt.output, "Matrix JSON path")
      ->required();
  ingest_cmd->add_option("--config", ingest_opt.config,
                         "Key-value config file (social_domains=...); "
                         "defaults to $ARCHETYPE_CONFIG when set");

  FactorizeOptions fact_opt;
  auto* fact_cmd = app.add_subcommand(
      "factorize", "Factorize a matrix JSON into non-negative factors");
  fact_cmd->add_option("--matrix", fact_opt.matrix, "Matrix JSON")->required();
  fact_cmd->add_option("--output", fact_opt.output, "Factors JSON path")
      ->required();
  fact_cmd->add_option("--rank", fact_opt.config.rank, "Number of components")
      ->capture_default_str();
  fact_cmd->add_option("--seed", fact_opt.config.seed, "Base random seed")
      ->capture_default_str();
  fact_cmd
      ->add_option("--restarts", fact_opt.config.restarts,
                   "Independent runs (seeds seed, seed+1, ...)")
      ->capture_default_str();
  fact_cmd
      ->add_option("--tol", fact_opt.config.tol,
                   "Relative improvement stopping threshold")
      ->capture_default_str();
  fact_cmd->add_option("--max-iter", fact_opt.config.max_iter,
                       "Maximum update iterations per run")
      ->capture_default_str();
  fact_cmd
      ->add_option("--check-every", fact_opt.config.check_every,
                   "Iterations between convergence checks")
      ->capture_default_str();
  fact_cmd->add_option("--epsilon", fact_opt.config.epsilon,
                       "Denominator guard in the updates")
      ->capture_default_str();
  fact_cmd->add_flag("--log1p", fact_opt.config.log1p_scale,
                     "Factorize log1p(V) instead of raw counts");

  PersonasOptions pers_opt;
  auto* pers_cmd = app.add_subcommand(
      "personas", "Turn factors into labeled archetypes");
  pers_cmd->add_option("--factors", pers_opt.factors, "Factors JSON")
      ->required();
  pers_cmd->add_option("--matrix", pers_opt.matrix, "Matrix JSON")->required();
  pers_cmd->add_option("--output", pers_opt.output, "Personas JSON path")
      ->required();
  pers_cmd
      ->add_option("--top-referrals", pers_opt.top_referrals,
                   "Referrals to rank per component")
      ->capture_default_str();
  pers_cmd
      ->add_option("--top-videos", pers_opt.top_videos,
                   "Video types to rank per component")
      ->capture_default_str();
  pers_cmd
      ->add_option("--mode", pers_opt.mode,
                   "Labeling mode: independent, one_to_one or auto")
      ->capture_default_str();

  ReportOptions report_opt;
  auto* report_cmd = app.add_subcommand(
      "report", "Write the channel summary, persona report and heatmap");
  report_cmd->add_option("--personas", report_opt.personas, "Personas JSON")
      ->required();
  report_cmd->add_option("--matrix", report_opt.matrix, "Matrix JSON")
      ->required();
  report_cmd->add_option("--factors", report_opt.factors, "Factors JSON")
      ->required();
  report_cmd
      ->add_option("--summary", report_opt.summary,
                   "Output: channel summary + persona report JSON")
      ->required();
  report_cmd
      ->add_option("--heatmap-csv", report_opt.heatmap_csv,
                   "Output: normalized heatmap CSV")
      ->required();
  report_cmd->add_option("--heatmap-raw-csv", report_opt.heatmap_raw_csv,
                         "Output: raw-weight heatmap CSV (optional)");
  report_cmd
      ->add_option("--heatmap-svg", report_opt.heatmap_svg,
                   "Output: heatmap SVG")
      ->required();
  report_cmd
      ->add_option("--mode", report_opt.mode,
                   "Component labeling mode for heatmap columns")
      ->capture_default_str();

  SynthOptions synth_opt;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a planted-model synthetic view log");
  synth_cmd->add_option("--rows", synth_opt.rows, "Referral groups")
      ->capture_default_str();
  synth_cmd->add_option("--cols", synth_opt.cols, "Video types")
      ->capture_default_str();
  synth_cmd->add_option("--rank", synth_opt.rank, "Planted components")
      ->capture_default_str();
  synth_cmd
      ->add_option("--noise", synth_opt.noise, "Noise model: none or poisson")
      ->check(CLI::IsMember({"none", "poisson"}))
      ->capture_default_str();
  synth_cmd->add_option("--scale", synth_opt.scale, "Intensity multiplier")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_opt.seed, "Random seed")
      ->capture_default_str();
  synth_cmd->add_option("--output", synth_opt.output, "View log CSV path")
      ->required();
  synth_cmd->add_option("--truth", synth_opt.truth,
                        "Optional ground-truth JSON path");
  synth_cmd->add_option("--date", synth_opt.date, "Log date (YYYY-MM-DD)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) return run_ingest(ingest_opt);
    if (fact_cmd->parsed()) return run_factorize(fact_opt);
    if (pers_cmd->parsed()) return run_personas(pers_opt);
    if (report_cmd->parsed()) return run_report(report_opt);
    if (synth_cmd->parsed()) return run_synth(synth_opt);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  return kExitUsage;
}
