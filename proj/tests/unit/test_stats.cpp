#include <cmath>
#include <vector>

#include "doctest.h"
#include "zonoclt/error.hpp"
#include "zonoclt/random.hpp"
#include "zonoclt/stats.hpp"

using namespace zonoclt;

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  for (double p : {1e-8, 0.01, 0.3, 0.5, 0.9, 0.999999})
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
}

TEST_CASE("sample moments") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(sample_mean(x) == doctest::Approx(2.5));
  CHECK(sample_variance(x) == doctest::Approx(5.0 / 3.0));
  CHECK(abs_central_moment(x, 2) == doctest::Approx(1.25));
  CHECK(abs_central_moment(x, 1) == doctest::Approx(1.0));
  CHECK(sample_variance(std::vector<double>{3.0}) == 0.0);
  const auto z = standardize(x);
  CHECK(sample_mean(z) == doctest::Approx(0.0));
  CHECK(sample_variance(z) == doctest::Approx(1.0));
  CHECK_THROWS_AS(standardize(std::vector<double>{2, 2, 2}), Error);
}

TEST_CASE("KS distance on hand-computed samples") {
  CHECK(ks_distance(std::vector<double>{0.0}) == doctest::Approx(0.5));
  // Sorted {-1, 1}: max over steps of |i/M - Phi|, |Phi - (i-1)/M|.
  const double p = normal_cdf(1.0);
  CHECK(ks_distance(std::vector<double>{1.0, -1.0}) == doctest::Approx(std::max(p - 0.5, 1.0 - p)));
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}), Error);
}

TEST_CASE("KS distance of a folded normal against its CDF") {
  SeededStream s(8);
  std::vector<double> x(10000);
  for (auto& v : x) v = std::abs(s.normal());
  const double d = ks_distance(x, [](double t) { return t <= 0 ? 0.0 : 2.0 * normal_cdf(t) - 1.0; });
  CHECK(d < ks_critical_5pct(x.size()) * 1.2);
  // Against Phi it is far off.
  CHECK(ks_distance(x) > 0.4);
}

TEST_CASE("self-standardized KS is location-scale invariant") {
  SeededStream s(9);
  std::vector<double> x(2000), y(2000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = s.normal();
    y[i] = 7.0 + 3.0 * x[i];
  }
  CHECK(ks_distance_standardized(x) == doctest::Approx(ks_distance_standardized(y)).epsilon(1e-9));
}

TEST_CASE("two-sample KS") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(a, b) == 1.0);
  CHECK(ks_two_sample(std::vector<double>{1, 3}, std::vector<double>{2, 4}) == doctest::Approx(0.5));
  CHECK(ks_critical_5pct(100) == doctest::Approx(0.136));
  CHECK(ks_critical_5pct(100, 100) == doctest::Approx(1.36 * std::sqrt(0.02)));
}

TEST_CASE("least squares slope and QQ points") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
  const auto qq = normal_qq(std::vector<double>{3, 1, 2});
  REQUIRE(qq.size() == 3);
  CHECK(qq[0].first < qq[1].first);
  CHECK(qq[1].first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(qq[0].second < qq[2].second);
}
