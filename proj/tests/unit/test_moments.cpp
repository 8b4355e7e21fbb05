#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "zonoclt/error.hpp"
#include "zonoclt/linalg.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/random.hpp"

using namespace zonoclt;
using std::numbers::pi;

TEST_CASE("log_gamma_ratio agrees with lgamma differences") {
  for (double x : {0.5, 1.0, 3.5, 11.0, 12.5, 40.0, 1000.0}) {
    for (double a : {0.5, 1.0, 2.5}) {
      const long double ref = std::lgammal(static_cast<long double>(x + a)) - std::lgammal(static_cast<long double>(x));
      CHECK(log_gamma_ratio(x, a) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_gamma_ratio stays accurate at large arguments") {
  // Gamma(x + 1) / Gamma(x) = x exactly.
  for (double x : {12.0, 500.0, 5000.5, 1e6}) CHECK(log_gamma_ratio(x, 1.0) == doctest::Approx(std::log(x)).epsilon(1e-14));
}

TEST_CASE("chi moments") {
  CHECK(chi_moment(1, 1) == doctest::Approx(std::sqrt(2.0 / pi)));
  CHECK(chi_moment(2, 1) == doctest::Approx(std::sqrt(pi / 2.0)));
  CHECK(chi_moment(3, 1) == doctest::Approx(2.0 * std::sqrt(2.0 / pi)));
  for (std::size_t k = 1; k <= 50; ++k) {
    CHECK(chi_moment(k, 2) == doctest::Approx(double(k)).epsilon(1e-12));
    CHECK(chi_moment(k, 4) == doctest::Approx(double(k) * (k + 2)).epsilon(1e-12));
  }
}

TEST_CASE("determinant moment constants") {
  double fact = 1.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    fact *= double(n);
    CHECK(delta_np(n, 2) * delta_np(n, 2) == doctest::Approx(fact).epsilon(1e-12));
  }
  CHECK(delta_np(2, 1) == doctest::Approx(1.0));
  CHECK(beta_n(2) == doctest::Approx(1.0));
  CHECK(beta_n(1) == doctest::Approx(std::sqrt(2.0 / pi)));
}

TEST_CASE("expected_dn closed forms") {
  // |sin| of a uniform angle.
  CHECK(expected_dn(1) == doctest::Approx(1.0));
  CHECK(expected_dn(2) == doctest::Approx(2.0 / pi));
}

TEST_CASE("expected_dn matches Monte Carlo at n = 3") {
  SeededStream s(31);
  const int M = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < M; ++i) {
    const auto m = ColumnMatrix::from_columns({sample_sphere(3, s), sample_sphere(3, s), sample_sphere(3, s)});
    const double d = std::abs(det(m));
    sum += d;
    sq += d * d;
  }
  const double mean = sum / M;
  const double se = std::sqrt((sq / M - mean * mean) / M);
  CHECK(std::abs(mean - expected_dn(3)) < 4.0 * se);
}

TEST_CASE("projection variances at n = 2") {
  CHECK(zeta1(2) / 16.0 == doctest::Approx(4.0 / pi - 1.0).epsilon(1e-12));
  CHECK(zeta_clt_combined(2) == doctest::Approx(64.0 / pi - 20.0).epsilon(1e-10));
  CHECK(cn_limit(2) == doctest::Approx(zeta1(2)).epsilon(1e-12));
  // n = 1: zeta1 = 4 Var(|g|) = 4 (1 - 2/pi).
  CHECK(zeta1(1) == doctest::Approx(4.0 * (1.0 - 2.0 / pi)).epsilon(1e-12));
}

TEST_CASE("N-dependent moments") {
  CHECK(xn_mean(2, 50) == doctest::Approx(4.0 * 1225.0));
  CHECK(yn_second_moment(2, 50) == doctest::Approx(2450.0));
  CHECK(yn_second_moment(3, 20) == doctest::Approx(6840.0));
  CHECK(yn_mean(1, 9) == doctest::Approx(chi_moment(9, 1)));
  CHECK(yn_var(2, 50) == doctest::Approx(2450.0 - std::pow(yn_mean(2, 50), 2)));
  // Var Y / N -> 1 at n = 2; the exact value at N = 10^4 is within 1e-3 of the limit.
  CHECK(yn_var(2, 10000) / 10000.0 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(yn_var(2, 10000) > 0.0);
}

TEST_CASE("MomentTable contents and JSON") {
  const MomentTable t(2);
  CHECK(t.at("beta_n") == doctest::Approx(1.0));
  CHECK(t.entries().count("yn_mean") == 0);
  CHECK_THROWS_AS(t.at("nonsense"), Error);
  const MomentTable tn(3, 20);
  CHECK(tn.at("yn_second_moment") == doctest::Approx(6840.0));
  const auto j = nlohmann::json::parse(tn.to_json());
  CHECK(j.at("n").get<int>() == 3);
  CHECK(j.at("entries").at("zeta1").at("value").get<double>() == doctest::Approx(zeta1(3)));
}
