#include "zonoclt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "zonoclt/error.hpp"
#include "zonoclt/parallel.hpp"

namespace zonoclt {

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw_invalid("normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw_invalid("sample_mean: empty sample");
  return pairwise_sum(x) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = sample_mean(x);
  std::vector<double> sq(x.size());
  std::transform(x.begin(), x.end(), sq.begin(), [m](double v) { return (v - m) * (v - m); });
  return pairwise_sum(sq) / static_cast<double>(x.size() - 1);
}

double abs_central_moment(std::span<const double> x, double p) {
  const double m = sample_mean(x);
  std::vector<double> d(x.size());
  std::transform(x.begin(), x.end(), d.begin(), [m, p](double v) { return std::pow(std::abs(v - m), p); });
  return pairwise_sum(d) / static_cast<double>(x.size());
}

std::vector<double> standardize(std::span<const double> x) {
  const double m = sample_mean(x);
  const double sd = std::sqrt(sample_variance(x));
  if (!(sd > 0.0)) throw_invalid("standardize: sample has zero spread");
  std::vector<double> z(x.size());
  std::transform(x.begin(), x.end(), z.begin(), [m, sd](double v) { return (v - m) / sd; });
  return z;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw_invalid("ks_distance: empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double m = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_distance(std::span<const double> samples) { return ks_distance(samples, normal_cdf); }

double ks_distance_standardized(std::span<const double> samples) { return ks_distance(standardize(samples)); }

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw_invalid("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_5pct(std::size_t m) { return 1.36 / std::sqrt(static_cast<double>(m)); }

double ks_critical_5pct(std::size_t a, std::size_t b) {
  const double da = static_cast<double>(a);
  const double db = static_cast<double>(b);
  return 1.36 * std::sqrt((da + db) / (da * db));
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw_invalid("least_squares_slope: need two or more paired points");
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw_invalid("least_squares_slope: x values are all equal");
  return sxy / sxx;
}

std::vector<std::pair<double, double>> normal_qq(std::span<const double> samples) {
  std::vector<double> z = standardize(samples);
  std::sort(z.begin(), z.end());
  const double m = static_cast<double>(z.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out.emplace_back(normal_quantile((static_cast<double>(i) + 0.5) / m), z[i]);
  return out;
}

}  // namespace zonoclt
