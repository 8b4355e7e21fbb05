#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "zonoclt/error.hpp"
#include "zonoclt/linalg.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/random.hpp"
#include "zonoclt/ustat.hpp"

using namespace zonoclt;

TEST_CASE("kernel registry") {
  for (const auto& label : kernel_labels()) CHECK(make_kernel(label, 3).label == label);
  CHECK(make_kernel("abs-det", 3).order == 3);
  CHECK(make_kernel("identity", 3).order == 1);
  CHECK_THROWS_AS(make_kernel("nope", 2), Error);
}

TEST_CASE("exact_ustat on trivial kernels") {
  SeededStream s(1);
  const auto d = sample_gaussian_matrix(2, 30, s);
  CHECK(exact_ustat(make_kernel("constant", 2), d, 1) == doctest::Approx(1.0));
  double mean0 = 0.0;
  for (std::size_t j = 0; j < d.ncols(); ++j) mean0 += d(0, j);
  CHECK(exact_ustat(make_kernel("identity", 2), d, 1) == doctest::Approx(mean0 / 30.0));
}

TEST_CASE("exact_ustat matches a double loop") {
  SeededStream s(2);
  const auto d = sample_gaussian_matrix(2, 25, s);
  double sum = 0.0, sum_sq = 0.0, cnt = 0.0;
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = i + 1; j < 25; ++j) {
      const double v = d(0, i) * d(1, j) - d(1, i) * d(0, j);
      sum += std::abs(v);
      sum_sq += v * v;
      cnt += 1.0;
    }
  CHECK(exact_ustat(make_kernel("abs-det", 2), d, 1) == doctest::Approx(sum / cnt).epsilon(1e-12));
  CHECK(exact_ustat(make_kernel("det-sq", 2), d, 1) == doctest::Approx(sum_sq / cnt).epsilon(1e-12));
  CHECK(exact_ustat(make_kernel("mixed-volume", 2), d, 1) == doctest::Approx(2.0 * sum / cnt).epsilon(1e-12));
  CHECK(exact_ustat(make_kernel("clt-combined", 2), d, 1) ==
        doctest::Approx((4.0 * sum - beta_n(2) * sum_sq) / cnt).epsilon(1e-12));
}

TEST_CASE("incomplete_ustat tracks the exact value") {
  SeededStream s(3);
  const auto d = sample_gaussian_matrix(2, 60, s);
  const auto k = make_kernel("abs-det", 2);
  SeededStream t(4);
  const auto est = incomplete_ustat(k, d, 20000, t);
  CHECK(est.draws == 20000);
  CHECK(std::abs(est.value - exact_ustat(k, d, 1)) < 4.0 * est.std_error);
}

TEST_CASE("estimate_zeta on kernels with known projection variance") {
  const SeededStream s(5);
  const auto id = estimate_zeta(make_kernel("identity", 2), 2, gaussian_law(), 4000, 100, s, 1);
  CHECK(std::abs(id.zeta_hat - 1.0) < 4.0 * id.std_error);
  const auto c = estimate_zeta(make_kernel("constant", 2), 2, gaussian_law(), 200, 100, s, 1);
  CHECK(c.zeta_hat == 0.0);
  const auto ad = estimate_zeta(make_kernel("abs-det", 2), 2, gaussian_law(), 600, 600, s, 1);
  CHECK(std::abs(ad.zeta_hat - (4.0 / std::numbers::pi - 1.0)) < 4.0 * ad.std_error);
  CHECK(ad.outer_count == 600);
  CHECK(ad.inner_count == 600);
}

TEST_CASE("estimate_zeta is bit-identical across thread counts") {
  const SeededStream s(6);
  const auto k = make_kernel("abs-det", 2);
  const auto a = estimate_zeta(k, 2, gaussian_law(), 200, 100, s, 1);
  const auto b = estimate_zeta(k, 2, gaussian_law(), 200, 100, s, 4);
  CHECK(a.zeta_raw == b.zeta_raw);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("estimate_zeta rejects small draw counts") {
  CHECK_THROWS_AS(estimate_zeta(make_kernel("abs-det", 2), 2, gaussian_law(), 50, 500, SeededStream(1), 1), Error);
  CHECK_THROWS_AS(estimate_zeta(make_kernel("abs-det", 2), 2, gaussian_law(), 500, 50, SeededStream(1), 1), Error);
}

TEST_CASE("variance law for the identity kernel") {
  // U_N is the sample mean of N standard normals: N Var U_N = 1 exactly.
  const std::size_t grid[] = {20, 80};
  const auto rows = ustat_variance_check(make_kernel("identity", 1), 1, grid, 4000, 1.0, SeededStream(7), 1);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    // Var of a sample variance over 4000 reps: relative SE sqrt(2/3999).
    CHECK(std::abs(r.ratio - 1.0) < 4.0 * std::sqrt(2.0 / 3999.0));
  }
}
