#include "zonoclt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "zonoclt/error.hpp"
#include "zonoclt/geometry.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/parallel.hpp"
#include "zonoclt/random.hpp"
#include "zonoclt/stats.hpp"
#include "zonoclt/subsets.hpp"
#include "zonoclt/ustat.hpp"
#include "zonoclt/version.hpp"

namespace zonoclt {

namespace {

// Stream keys outside the range of any grid value N.
constexpr std::uint64_t kZetaStreamKey = std::uint64_t{1} << 62;

struct NamedExperiment {
  Experiment e;
  const char* name;
};

constexpr NamedExperiment kExperiments[] = {
    {Experiment::XnClt, "xn-clt"},
    {Experiment::YnVariance, "yn-variance"},
    {Experiment::ZnClt, "zn-clt"},
    {Experiment::Decomposition, "decomposition"},
    {Experiment::ZetaRatio, "zeta-ratio"},
    {Experiment::BerryEsseen, "berry-esseen"},
    {Experiment::MomentScaling, "moment-scaling"},
    {Experiment::MomentsDump, "moments-dump"},
};

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double powN(std::size_t N, double e) { return std::pow(static_cast<double>(N), e); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentReport start_report(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport r;
  r.config = cfg;
  r.version = kVersionString;
  r.threads_used = resolve_threads(cfg.threads);
  return r;
}

/// fn(stream) -> double for replications 0..M-1 of grid point N.
template <class Fn>
std::vector<double> replicate(const ExperimentConfig& cfg, std::size_t N, Fn&& fn) {
  const SeededStream sn = SeededStream(cfg.master_seed).child(N);
  std::vector<double> out(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    SeededStream sr = sn.child(r);
    out[r] = fn(sr);
  });
  return out;
}

std::vector<SplittingTriple> replicate_triples(const ExperimentConfig& cfg, std::size_t N) {
  const SplittingMoments moments = SplittingMoments::compute(cfg.n, N);
  const SeededStream sn = SeededStream(cfg.master_seed).child(N);
  std::vector<SplittingTriple> out(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    SeededStream sr = sn.child(r);
    out[r] = sample_splitting_triple(moments, sr, 1);
  });
  return out;
}

void fill_distribution(ReportRow& row, std::span<const double> x) {
  row.mean = sample_mean(x);
  row.var = sample_variance(x);
  row.ks_d = ks_distance_standardized(x);
}

void maybe_qq(ExperimentReport& r, std::size_t N, std::span<const double> x) {
  if (r.config.emit_qq) r.qq[N] = normal_qq(x);
}

std::uint64_t enforce_resample_policy(std::span<const SplittingTriple> ts) {
  std::uint64_t count = 0;
  for (const auto& t : ts) count += t.resamples;
  if (static_cast<double>(count) > kMaxResampleFraction * static_cast<double>(ts.size()))
    throw Error(ErrorCode::RankDeficient, "too many rank-deficient draws (" + std::to_string(count) + " of " +
                                              std::to_string(ts.size()) + "): RNG or linear algebra fault");
  return count;
}

double mean_of(std::span<const SplittingTriple> ts, double SplittingTriple::*field) {
  std::vector<double> v(ts.size());
  std::transform(ts.begin(), ts.end(), v.begin(), [field](const SplittingTriple& t) { return t.*field; });
  return sample_mean(v);
}

std::optional<double> closed_form_zeta(const std::string& label, std::size_t n) {
  const double nf = factorial(n);
  if (label == "abs-det") return zeta1(n) / std::pow(4.0, static_cast<double>(n));
  if (label == "mixed-volume") return zeta1(n) / (nf * nf);
  if (label == "clt-combined") return zeta_clt_combined(n);
  if (label == "identity") return 1.0;
  if (label == "constant") return 0.0;
  return std::nullopt;
}

std::size_t kernel_order(const ExperimentConfig& cfg) { return make_kernel(cfg.kernel, cfg.n).order; }

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& ne : kExperiments)
    if (ne.e == e) return ne.name;
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

Experiment parse_experiment(const std::string& name) {
  if (name == "moments") return Experiment::MomentsDump;
  for (const auto& ne : kExperiments)
    if (name == ne.name) return ne.e;
  throw_invalid("unknown experiment '" + name + "'");
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw_invalid("unknown output format '" + name + "' (expected json or csv)");
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& ne : kExperiments) out.emplace_back(ne.name);
  return out;
}

ExperimentConfig ExperimentConfig::defaults_for(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::XnClt:
      c.N_grid = {50, 100, 200};
      break;
    case Experiment::YnVariance:
      c.N_grid = {100, 1000, 10000};
      c.replications = 100000;
      break;
    case Experiment::ZnClt:
      c.N_grid = {100, 200, 500};
      break;
    case Experiment::Decomposition:
      c.N_grid = {100, 500};
      break;
    case Experiment::ZetaRatio:
      c.N_grid = {25, 50, 100};
      break;
    case Experiment::BerryEsseen:
      c.N_grid = {50, 100, 200};
      c.replications = 5000;
      break;
    case Experiment::MomentScaling:
      c.N_grid = {25, 50, 100};
      c.replications = 5000;
      break;
    case Experiment::MomentsDump:
      c.N_grid = {10, 100, 1000};
      c.replications = 0;
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (n == 0 || n > kMaxZonotopeDim) throw_invalid("n must lie in 1..6, got " + std::to_string(n));
  if (N_grid.empty()) throw_invalid("N grid is empty");
  for (std::size_t i = 0; i < N_grid.size(); ++i) {
    if (N_grid[i] < n)
      throw_invalid("grid value N=" + std::to_string(N_grid[i]) + " is smaller than n=" + std::to_string(n));
    if (i > 0 && N_grid[i] <= N_grid[i - 1]) throw_invalid("N grid must be strictly increasing");
  }
  if (experiment != Experiment::MomentsDump && replications < kMinReplications)
    throw_invalid("need at least " + std::to_string(kMinReplications) + " replications, got " +
                  std::to_string(replications));
  if (experiment == Experiment::MomentScaling && p != 2 && p != 4)
    throw_invalid("moment-scaling supports p in {2, 4}, got " + std::to_string(p));
  if ((experiment == Experiment::ZnClt || experiment == Experiment::ZetaRatio) &&
      (zeta_outer < kZetaMinDraws || zeta_inner < kZetaMinDraws))
    throw_invalid("zeta outer/inner draws must be >= " + std::to_string(kZetaMinDraws));

  std::size_t order = n;
  if (experiment == Experiment::ZetaRatio || experiment == Experiment::BerryEsseen) order = kernel_order(*this);
  switch (experiment) {
    case Experiment::XnClt:
    case Experiment::ZnClt:
    case Experiment::Decomposition:
    case Experiment::MomentScaling:
    case Experiment::ZetaRatio:
    case Experiment::BerryEsseen:
      for (std::size_t N : N_grid) check_subset_budget(N, order, to_string(experiment).c_str());
      break;
    case Experiment::YnVariance:
    case Experiment::MomentsDump:
      break;
  }
}

ExperimentReport run_xn_clt(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const double cn = cn_limit(cfg.n);
  const double nd = static_cast<double>(cfg.n);
  for (std::size_t N : cfg.N_grid) {
    auto x = replicate(cfg, N, [&](SeededStream& s) {
      return zonotope_volume(Zonotope(sample_gaussian_matrix(cfg.n, N, s)), 1);
    });
    ReportRow row;
    row.N = N;
    fill_distribution(row, x);
    const double scaled = row.var / powN(N, 2.0 * nd - 1.0);
    row.var_ratio = scaled / cn;
    row.extra["var_scaled"] = scaled;
    row.extra["xn_mean_exact"] = xn_mean(cfg.n, N);
    row.extra["ks_critical_5pct"] = ks_critical_5pct(x.size());
    maybe_qq(r, N, x);
    r.rows.push_back(std::move(row));
  }
  r.summary["cn_limit"] = cn;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_yn_experiments(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const double nd = static_cast<double>(cfg.n);
  for (std::size_t N : cfg.N_grid) {
    auto y = replicate(cfg, N, [&](SeededStream& s) { return sample_ynfactor(cfg.n, N, s); });
    ReportRow row;
    row.N = N;
    row.mean = sample_mean(y);
    row.var = sample_variance(y);
    const double scaled = row.var / powN(N, nd - 1.0);
    row.var_ratio = scaled / (nd / 2.0);

    std::vector<double> y2(y.size());
    std::vector<double> t(y.size());
    const double Nn = powN(N, nd);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y2[i] = y[i] * y[i];
      t[i] = std::sqrt(static_cast<double>(N)) * (y2[i] / Nn - 1.0) / std::sqrt(2.0 * nd);
    }
    row.ks_d = ks_distance(t);
    row.extra["var_scaled"] = scaled;
    row.extra["var_scaled_exact"] = yn_var(cfg.n, N) / powN(N, nd - 1.0);
    row.extra["ey2_empirical"] = sample_mean(y2);
    row.extra["ey2_exact"] = yn_second_moment(cfg.n, N);
    row.extra["ey2_std_error"] = std::sqrt(sample_variance(y2) / static_cast<double>(y2.size()));
    maybe_qq(r, N, t);
    r.rows.push_back(std::move(row));
  }
  r.summary["var_limit"] = nd / 2.0;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_zn_clt(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const std::size_t n = cfg.n;
  const double nd = static_cast<double>(n);
  const ZetaEstimate zeta =
      estimate_zeta(make_kernel("clt-combined", n), n, gaussian_law(), cfg.zeta_outer, cfg.zeta_inner,
                    SeededStream(cfg.master_seed).child(kZetaStreamKey), cfg.threads);
  for (std::size_t N : cfg.N_grid) {
    const auto ts = replicate_triples(cfg, N);
    std::vector<double> z(ts.size());
    double worst_split = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      z[i] = ts[i].z_n;
      worst_split = std::max(worst_split, std::abs(ts[i].x_n - ts[i].y_n * ts[i].z_n) / ts[i].x_n);
    }
    ReportRow row;
    row.N = N;
    fill_distribution(row, z);
    const double denom = powN(N, (nd - 1.0) / 2.0) * nd * std::sqrt(zeta.zeta_hat);
    row.var_ratio = denom > 0.0 ? factorial(n) * std::sqrt(row.var) / denom : 0.0;
    row.alpha_mean = mean_of(ts, &SplittingTriple::alpha);
    row.beta_mean = mean_of(ts, &SplittingTriple::beta);
    row.delta_mean = mean_of(ts, &SplittingTriple::delta);
    row.resamples = enforce_resample_policy(ts);
    row.extra["var_ratio_sq"] = row.var_ratio * row.var_ratio;
    row.extra["max_split_residual"] = worst_split;
    row.extra["zn_mean_exact"] = xn_mean(n, N) / yn_mean(n, N);
    row.extra["ks_critical_5pct"] = ks_critical_5pct(z.size());
    maybe_qq(r, N, z);
    r.rows.push_back(std::move(row));
  }
  r.summary["zeta_hat"] = zeta.zeta_hat;
  r.summary["zeta_std_error"] = zeta.std_error;
  r.summary["zeta_clamped"] = zeta.clamped ? 1.0 : 0.0;
  r.summary["zeta_closed_form"] = zeta_clt_combined(n);
  r.summary["beta_limit"] = beta_n(n);
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_decomposition_check(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  for (std::size_t N : cfg.N_grid) {
    const SplittingMoments m = SplittingMoments::compute(cfg.n, N);
    const auto ts = replicate_triples(cfg, N);
    std::vector<double> z(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) z[i] = ts[i].z_n;
    ReportRow row;
    row.N = N;
    fill_distribution(row, z);
    const double z_emp = row.mean;
    double worst_exact = 0.0;
    double worst_emp = 0.0;
    for (const auto& t : ts) {
      worst_exact = std::max(worst_exact, std::abs(decomposition_residual(t, m)));
      worst_emp = std::max(worst_emp, std::abs(decomposition_residual(t, m, z_emp)));
    }
    row.alpha_mean = mean_of(ts, &SplittingTriple::alpha);
    row.beta_mean = mean_of(ts, &SplittingTriple::beta);
    row.delta_mean = mean_of(ts, &SplittingTriple::delta);
    row.resamples = enforce_resample_policy(ts);
    row.extra["max_residual_closed_form"] = worst_exact;
    row.extra["max_residual_empirical_mean"] = worst_emp;
    row.extra["zn_mean_exact"] = m.zn_mean();
    r.rows.push_back(std::move(row));
  }
  r.summary["alpha_limit"] = 1.0;
  r.summary["beta_limit"] = beta_n(cfg.n);
  r.summary["delta_limit"] = 0.0;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_zeta_ratio(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const UStatKernel k = make_kernel(cfg.kernel, cfg.n);
  const ZetaEstimate zeta = estimate_zeta(k, cfg.n, gaussian_law(), cfg.zeta_outer, cfg.zeta_inner,
                                          SeededStream(cfg.master_seed).child(kZetaStreamKey), cfg.threads);
  const auto rows = ustat_variance_check(k, cfg.n, cfg.N_grid, cfg.replications, zeta.zeta_hat,
                                         SeededStream(cfg.master_seed), cfg.threads);
  for (const auto& vr : rows) {
    ReportRow row;
    row.N = vr.N;
    row.mean = vr.mean;
    row.var = vr.variance;
    row.var_ratio = vr.ratio;
    r.rows.push_back(std::move(row));
  }
  r.summary["zeta_hat"] = zeta.zeta_hat;
  r.summary["zeta_std_error"] = zeta.std_error;
  r.summary["zeta_clamped"] = zeta.clamped ? 1.0 : 0.0;
  r.summary["kernel_order"] = static_cast<double>(k.order);
  if (auto zc = closed_form_zeta(cfg.kernel, cfg.n)) r.summary["zeta_closed_form"] = *zc;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_berry_esseen(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const UStatKernel k = make_kernel(cfg.kernel, cfg.n);
  const auto zc = closed_form_zeta(cfg.kernel, cfg.n);
  const double m = static_cast<double>(k.order);
  std::vector<double> logN, logD;
  for (std::size_t N : cfg.N_grid) {
    auto u = replicate(cfg, N, [&](SeededStream& s) {
      return exact_ustat(k, sample_gaussian_matrix(cfg.n, N, s), 1);
    });
    ReportRow row;
    row.N = N;
    fill_distribution(row, u);
    if (zc && *zc > 0.0) row.var_ratio = static_cast<double>(N) * row.var / (m * m * *zc);
    logN.push_back(std::log(static_cast<double>(N)));
    logD.push_back(std::log(std::max(row.ks_d, 1e-300)));
    maybe_qq(r, N, u);
    r.rows.push_back(std::move(row));
  }
  const double noise = 1.0 / std::sqrt(static_cast<double>(cfg.replications));
  double max_increase = 0.0;
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    max_increase = std::max(max_increase, r.rows[i].ks_d - r.rows[i - 1].ks_d);
  r.summary["noise_floor"] = noise;
  r.summary["max_increase"] = max_increase;
  r.summary["non_increasing_within_noise"] = max_increase <= noise ? 1.0 : 0.0;
  r.summary["loglog_slope"] = logN.size() >= 2 ? least_squares_slope(logN, logD) : 0.0;
  if (zc) r.summary["zeta_closed_form"] = *zc;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_moment_scaling(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const double nd = static_cast<double>(cfg.n);
  const double p = static_cast<double>(cfg.p);
  const double cn = cn_limit(cfg.n);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t N : cfg.N_grid) {
    auto x = replicate(cfg, N, [&](SeededStream& s) {
      return zonotope_volume(Zonotope(sample_gaussian_matrix(cfg.n, N, s)), 1);
    });
    ReportRow row;
    row.N = N;
    fill_distribution(row, x);
    row.var_ratio = row.var / powN(N, 2.0 * nd - 1.0) / cn;
    const double ratio = abs_central_moment(x, p) / powN(N, p * (nd - 0.5));
    row.extra["moment_ratio"] = ratio;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    r.rows.push_back(std::move(row));
  }
  r.summary["p"] = p;
  r.summary["max_min_ratio"] = hi / lo;
  r.summary["cn_limit"] = cn;
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_moments_dump(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentReport r = start_report(cfg);
  const MomentTable base(cfg.n);
  for (const auto& [name, e] : base.entries()) r.summary[name] = e.value;
  for (std::size_t N : cfg.N_grid) {
    const MomentTable t(cfg.n, N);
    ReportRow row;
    row.N = N;
    row.mean = t.at("zn_mean");
    for (const auto& [name, e] : t.entries())
      if (!base.entries().contains(name)) row.extra[name] = e.value;
    r.rows.push_back(std::move(row));
  }
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::XnClt:
      return run_xn_clt(cfg);
    case Experiment::YnVariance:
      return run_yn_experiments(cfg);
    case Experiment::ZnClt:
      return run_zn_clt(cfg);
    case Experiment::Decomposition:
      return run_decomposition_check(cfg);
    case Experiment::ZetaRatio:
      return run_zeta_ratio(cfg);
    case Experiment::BerryEsseen:
      return run_berry_esseen(cfg);
    case Experiment::MomentScaling:
      return run_moment_scaling(cfg);
    case Experiment::MomentsDump:
      return run_moments_dump(cfg);
  }
  throw_invalid("unhandled experiment");
}

}  // namespace zonoclt
