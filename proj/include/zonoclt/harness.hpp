#pragma once

// Experiment orchestration: each runner draws `replications` independent
// samples per N (replication r of grid point N uses stream
// SeededStream(master_seed).child(N).child(r)), summarizes them, and returns an
// ExperimentReport whose statistics depend only on the config and seed.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zonoclt {

enum class Experiment {
  XnClt,
  YnVariance,
  ZnClt,
  Decomposition,
  ZetaRatio,
  BerryEsseen,
  MomentScaling,
  MomentsDump,
};

enum class OutputFormat { Json, Csv };

std::string to_string(Experiment e);
std::string to_string(OutputFormat f);
/// Accepts the CLI names (xn-clt, yn-variance, ...); "moments" is an alias of moments-dump.
Experiment parse_experiment(const std::string& name);
OutputFormat parse_output_format(const std::string& name);
std::vector<std::string> experiment_names();

/// Distributional experiments need at least this many replications.
inline constexpr std::size_t kMinReplications = 100;
/// Abort when more than this fraction of draws were rank-deficient.
inline constexpr double kMaxResampleFraction = 0.001;

struct ExperimentConfig {
  Experiment experiment = Experiment::XnClt;
  std::size_t n = 2;
  std::vector<std::size_t> N_grid;
  std::size_t replications = 2000;
  std::uint64_t master_seed = 20121202;
  unsigned threads = 0;
  std::string output_path;
  OutputFormat output_format = OutputFormat::Json;
  bool emit_qq = false;
  std::string kernel = "abs-det";
  int p = 4;
  std::size_t zeta_outer = 2000;
  std::size_t zeta_inner = 2000;

  /// Default n, grid and sample count for an experiment.
  static ExperimentConfig defaults_for(Experiment e);
  /// Throws InvalidInput on a malformed config (grid order, N < n, too few replications, ...).
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// One row per grid point. Columns that do not apply to an experiment stay 0;
/// experiment-specific values go into `extra`.
struct ReportRow {
  std::size_t N = 0;
  double mean = 0.0;
  double var = 0.0;
  double ks_d = 0.0;
  double var_ratio = 0.0;
  double alpha_mean = 0.0;
  double beta_mean = 0.0;
  double delta_mean = 0.0;
  std::uint64_t resamples = 0;
  std::map<std::string, double> extra;

  bool operator==(const ReportRow&) const = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string version;
  unsigned threads_used = 1;
  std::vector<ReportRow> rows;
  std::map<std::string, double> summary;
  /// (theoretical quantile, standardized sample quantile) per N, when emit_qq is set.
  std::map<std::size_t, std::vector<std::pair<double, double>>> qq;
  double wall_seconds = 0.0;

  bool operator==(const ExperimentReport&) const = default;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

ExperimentReport run_xn_clt(const ExperimentConfig& cfg);
ExperimentReport run_yn_experiments(const ExperimentConfig& cfg);
ExperimentReport run_zn_clt(const ExperimentConfig& cfg);
ExperimentReport run_decomposition_check(const ExperimentConfig& cfg);
ExperimentReport run_zeta_ratio(const ExperimentConfig& cfg);
ExperimentReport run_berry_esseen(const ExperimentConfig& cfg);
ExperimentReport run_moment_scaling(const ExperimentConfig& cfg);
ExperimentReport run_moments_dump(const ExperimentConfig& cfg);

/// Full report as JSON (config echo, version, statistics, qq, timing).
std::string report_to_json(const ExperimentReport& r, int indent = 2);
ExperimentReport report_from_json(const std::string& text);
/// Only the "statistics" object (rows + summary): a pure function of config and seed.
std::string statistics_json(const ExperimentReport& r, int indent = 2);
/// Per-N rows: N, mean, var, ks_d, var_ratio, alpha_mean, beta_mean, delta_mean, resamples.
/// Preceded by '#' comment lines carrying version, seed and thread count.
std::string report_to_csv(const ExperimentReport& r);
/// N, theoretical_quantile, sample_quantile.
std::string qq_to_csv(const ExperimentReport& r);

/// Path of the QQ file written next to `output_path`.
std::string qq_path_for(const std::string& output_path);

/// Writes the report in cfg.output_format to cfg.output_path (stdout when empty)
/// and, with emit_qq, the QQ CSV next to it. I/O failures throw Io naming the path.
void emit_report(const ExperimentReport& r, const ExperimentConfig& cfg);

}  // namespace zonoclt
