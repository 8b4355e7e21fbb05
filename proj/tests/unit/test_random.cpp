#include <cmath>
#include <vector>

#include "doctest.h"
#include "zonoclt/linalg.hpp"
#include "zonoclt/random.hpp"
#include "zonoclt/stats.hpp"

using namespace zonoclt;

TEST_CASE("streams are reproducible and distinct") {
  SeededStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
    vd.push_back(d());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
}

TEST_CASE("a copy continues from the same position") {
  SeededStream a(5);
  a();
  a.normal();
  SeededStream b = a;
  for (int i = 0; i < 8; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("child streams do not advance the parent and differ by index") {
  SeededStream p(9);
  SeededStream q(9);
  const auto c1 = p.child(1);
  const auto c1b = p.child(1);
  const auto c2 = p.child(2);
  CHECK(p() == q());
  SeededStream x = c1, y = c1b, z = c2;
  CHECK(x() == y());
  SeededStream x2 = c1;
  CHECK(x2() != z());
  CHECK(p.child(1).child(2)() != p.child(2).child(1)());
}

TEST_CASE("uniform lies in [0, 1) and has mean 1/2") {
  SeededStream s(1);
  const int M = 200000;
  double sum = 0.0;
  for (int i = 0; i < M; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / M - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / M));
}

TEST_CASE("normal draws pass a KS test against Phi") {
  SeededStream s(2);
  std::vector<double> x(20000);
  for (auto& v : x) v = s.normal();
  CHECK(ks_distance(x) < 1.63 / std::sqrt(static_cast<double>(x.size())));
}

TEST_CASE("chi draws match the norm of a Gaussian vector in law") {
  for (std::size_t k : {1u, 2u, 5u, 30u}) {
    SeededStream s(3 + k), t(1000 + k);
    const std::size_t M = 4000;
    std::vector<double> a(M), b(M);
    for (auto& v : a) v = sample_chi(k, s);
    for (auto& v : b) {
      double ss = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double g = t.normal();
        ss += g * g;
      }
      v = std::sqrt(ss);
    }
    CHECK(ks_two_sample(a, b) < 1.63 * std::sqrt(2.0 / M));
  }
}

TEST_CASE("the chi product has the law of the Gram determinant root") {
  const std::size_t n = 2, N = 6, M = 4000;
  SeededStream s(21), t(22);
  std::vector<double> a(M), b(M);
  for (auto& v : a) v = sample_ynfactor(n, N, s);
  for (auto& v : b) v = gram_det_sqrt(sample_gaussian_matrix(n, N, t));
  CHECK(ks_two_sample(a, b) < 1.63 * std::sqrt(2.0 / M));
}

TEST_CASE("sphere samples have unit norm") {
  SeededStream s(4);
  for (int i = 0; i < 100; ++i) CHECK(norm2(sample_sphere(4, s)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Grassmannian samples are orthonormal and rotation invariant in mean") {
  // ||P_E e_1||^2 ~ Beta(n/2, (N-n)/2), mean n/N, variance 2n(N-n)/(N^2 (N+2)).
  const std::size_t n = 2, N = 7, M = 5000;
  SeededStream s(6);
  double sum = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const auto e = sample_grassmannian(n, N, s);
    if (i == 0) {
      CHECK(dot(e.basis.row(0), e.basis.row(1)) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(norm2(e.basis.row(1)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const double p0 = e.basis.row(0)[0], p1 = e.basis.row(1)[0];
    sum += p0 * p0 + p1 * p1;
  }
  const double var = 2.0 * n * (N - n) / (double(N) * N * (N + 2));
  CHECK(std::abs(sum / M - double(n) / N) < 4.0 * std::sqrt(var / M));
}
