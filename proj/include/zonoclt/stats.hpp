#pragma once

// Descriptive statistics and Kolmogorov-Smirnov distances. Sums go through
// pairwise_sum so results depend only on sample order, never on threading.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace zonoclt {

double normal_cdf(double t);       // Phi(t) via erfc
double normal_quantile(double p);  // Phi^{-1}(p), 0 < p < 1

double sample_mean(std::span<const double> x);
/// Unbiased (n - 1) sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> x);
/// E|x - mean|^p over the sample (p-th absolute central moment, 1/M normalization).
double abs_central_moment(std::span<const double> x, double p);

/// (x - mean) / sd with the sample's own mean and unbiased standard deviation.
/// Throws InvalidInput when the sample has zero spread.
std::vector<double> standardize(std::span<const double> x);

/// sup_t |F_M(t) - cdf(t)|, evaluated on both sides of every jump.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);
/// KS distance against the standard normal CDF. Empty input throws InvalidInput.
double ks_distance(std::span<const double> samples);
/// KS distance of the self-standardized sample against Phi.
double ks_distance_standardized(std::span<const double> samples);
/// Two-sample statistic sup_t |F_a(t) - F_b(t)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic 5% critical value of the one-sample statistic, 1.36 / sqrt(M).
double ks_critical_5pct(std::size_t m);
/// Asymptotic 5% critical value of the two-sample statistic, 1.36 sqrt((a + b) / (a b)).
double ks_critical_5pct(std::size_t a, std::size_t b);

/// Ordinary least-squares slope of y on x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// (Phi^{-1}((i - 0.5) / M), x_(i)) pairs for a QQ plot of the standardized sample.
std::vector<std::pair<double, double>> normal_qq(std::span<const double> samples);

}  // namespace zonoclt
