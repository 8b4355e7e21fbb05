#pragma once
// Reference implementations used only as test oracles. Deliberately naive and
// independent of the library code paths they check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;  // row-major

/// Cofactor expansion along the first row.
inline double laplace_det(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<double> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    s += ((j % 2 == 0) ? 1.0 : -1.0) * a[0][j] * laplace_det(minor);
  }
  return s;
}

/// Calls fn on every increasing k-tuple of {0..N-1}, recursively.
inline void for_each_subset(std::size_t N, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i < N; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

/// Sum of squared maximal minors of the n x N row-major matrix a.
inline double cauchy_binet(const Mat& a) {
  const std::size_t n = a.size(), N = a[0].size();
  double s = 0.0;
  for_each_subset(N, n, [&](const std::vector<std::size_t>& cols) {
    Mat m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][cols[j]];
    const double d = laplace_det(m);
    s += d * d;
  });
  return s;
}

/// 2^n sum over n-subsets of |det|, by cofactor expansion.
inline double zonotope_volume(const Mat& a) {
  const std::size_t n = a.size(), N = a[0].size();
  double s = 0.0;
  for_each_subset(N, n, [&](const std::vector<std::size_t>& cols) {
    Mat m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][cols[j]];
    s += std::abs(laplace_det(m));
  });
  return std::ldexp(s, static_cast<int>(n));
}

}  // namespace oracle
