#pragma once

// Deterministic, splittable sampling. A SeededStream is a value: copying it
// copies its position, so two copies produce identical sequences.

#include <cstdint>
#include <limits>
#include <random>

#include "zonoclt/linalg.hpp"

namespace zonoclt {

class SeededStream {
 public:
  using result_type = std::uint64_t;

  explicit SeededStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const noexcept { return master_; }
  std::uint64_t stream_index() const noexcept { return index_; }

  /// Independent stream keyed by (this stream's identity, index). Does not advance *this.
  SeededStream child(std::uint64_t index) const;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;  // xoshiro256**

  double uniform() noexcept;  // [0, 1)
  double normal();
  double gamma(double shape, double scale);

 private:
  std::uint64_t master_;
  std::uint64_t index_;
  std::uint64_t state_[4];
  std::normal_distribution<double> normal_;
};

struct GrassmannSample {
  OrthonormalBasis basis;
};

/// n x N matrix of i.i.d. standard normals, filled column by column.
ColumnMatrix sample_gaussian_matrix(std::size_t n, std::size_t N, SeededStream& s);

/// Uniform direction on S^{n-1}.
Vector sample_sphere(std::size_t n, SeededStream& s);

/// One chi_k variate, drawn as sqrt(Gamma(k/2, 2)).
double sample_chi(std::size_t k, SeededStream& s);

/// Haar-uniform n-dimensional subspace of R^N (orthonormalized Gaussian rows).
GrassmannSample sample_grassmannian(std::size_t n, std::size_t N, SeededStream& s);

/// chi_N * chi_{N-1} * ... * chi_{N-n+1}: equal in law to det(G G^T)^{1/2}.
double sample_ynfactor(std::size_t n, std::size_t N, SeededStream& s);

}  // namespace zonoclt
