#pragma once

// Zonotope volumes, mixed volumes of segments, cube projections, and the
// splitting triple X_N = Y_N * Z_N for a Gaussian matrix G.

#include <cstddef>
#include <cstdint>
#include <span>

#include "zonoclt/linalg.hpp"
#include "zonoclt/random.hpp"

namespace zonoclt {

inline constexpr std::size_t kMaxZonotopeDim = 6;

/// The zonotope sum_i [-x_i, x_i] for the columns x_i of an n x N generator matrix.
class Zonotope {
 public:
  explicit Zonotope(ColumnMatrix generators) : generators_(std::move(generators)) {}
  const ColumnMatrix& generators() const noexcept { return generators_; }
  std::size_t dim() const noexcept { return generators_.dim(); }
  std::size_t size() const noexcept { return generators_.ncols(); }

 private:
  ColumnMatrix generators_;
};

/// 2^n sum over n-subsets of |det|. Rank-deficient generator sets give 0.
/// Throws ResourceLimit when n > 6 or C(N, n) exceeds the subset budget.
/// threads = 0 uses all hardware threads; the result does not depend on it.
double zonotope_volume(const Zonotope& z, unsigned threads = 0);

/// V(x_1, ..., x_n) = (2^n / n!) |det[x_1 ... x_n]|.
double mixed_volume_segments(std::span<const Vector> segments);

/// Volume of the convex hull of a point set in R^n, n <= 3, by summing
/// (1/n) * (facet distance to origin) * (facet area) over supporting
/// hyperplanes. Points must be centrally symmetric about the origin or at
/// least have the origin in their hull. Lower-dimensional sets give 0.
/// Brute force; meant for a few dozen points.
double hull_volume_symmetric(std::span<const Vector> points);

/// Volume of sum_i [-x_i, x_i] through its 2^N vertices and hull_volume_symmetric.
/// Independent of the determinant formula. n <= 3, N <= 12.
double zonotope_volume_by_hull(std::span<const Vector> generators);

/// Mixed volume of n segments through the inclusion-exclusion definition
///   V(K_1..K_n) = (1/n!) sum_j (-1)^{n+j} sum_{i_1<..<i_j} |K_{i_1} + .. + K_{i_j}|
/// with each Minkowski-sum volume taken by the hull route. Test oracle, n <= 3.
double minkowski_oracle(std::span<const Vector> segments);

/// |P_E B_inf^N|: the zonotope generated by the N columns of the basis matrix.
double cube_projection_volume(const GrassmannSample& e, unsigned threads = 0);

/// One Monte Carlo draw of (X_N, Y_N, Z_N) with the coefficients of the
/// expansion
///   (Z - EZ)/N^{(n-1)/2} = alpha (X - EX)/N^{n-1/2} - beta (Y^2 - EY^2)/N^{n-1/2} - delta.
struct SplittingTriple {
  double x_n = 0.0;  ///< |G B_inf^N|
  double y_n = 0.0;  ///< det(G G^T)^{1/2}
  double z_n = 0.0;  ///< |P_E B_inf^N|, E = Range(G^T), computed on the projection
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  std::uint32_t resamples = 0;  ///< rank-deficient draws discarded before this one
};

/// Closed-form moments that the splitting coefficients need; compute once per (n, N).
struct SplittingMoments {
  std::size_t n = 0;
  std::size_t N = 0;
  double xn_mean = 0.0;
  double yn_mean = 0.0;
  double yn_var = 0.0;
  double yn_second_moment = 0.0;

  static SplittingMoments compute(std::size_t n, std::size_t N);
  double zn_mean() const { return xn_mean / yn_mean; }
};

/// Draws G (n x N) from s and builds the triple. X_N by the determinant sum,
/// Y_N by QR, Z_N as the volume of the cube projected onto the orthonormalized
/// rows of G. A rank-deficient draw is resampled once; a second failure throws.
SplittingTriple sample_splitting_triple(std::size_t n, std::size_t N, SeededStream& s, unsigned threads = 0);
SplittingTriple sample_splitting_triple(const SplittingMoments& m, SeededStream& s, unsigned threads = 0);

/// Left side minus right side of the expansion for one draw, with all means
/// taken from `m` (EZ = EX / EY). Zero up to rounding.
double decomposition_residual(const SplittingTriple& t, const SplittingMoments& m);

/// Same residual, but with EZ replaced by `zn_mean_estimate`.
double decomposition_residual(const SplittingTriple& t, const SplittingMoments& m, double zn_mean_estimate);

}  // namespace zonoclt
