#pragma once

// U-statistics with symmetric kernels on vectors in R^n: exact evaluation over
// all m-subsets, subsampled estimation, and nested Monte Carlo estimation of
// the Hoeffding projection variance zeta = Var E[h(X_1..X_m) | X_1].

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zonoclt/linalg.hpp"
#include "zonoclt/random.hpp"

namespace zonoclt {

/// Arguments of a kernel: m pointers to vectors of length dim.
struct KernelArgs {
  std::span<const double* const> vectors;
  std::size_t dim;
};

struct UStatKernel {
  std::size_t order = 1;
  std::function<double(const KernelArgs&)> eval;
  std::string label;

  double operator()(const KernelArgs& a) const { return eval(a); }
};

/// Built-in kernel labels accepted by make_kernel.
///   abs-det       |det[x_1..x_n]|                 (order n)
///   det-sq        det[x_1..x_n]^2                 (order n)
///   clt-combined  2^n |det| - beta_n det^2        (order n)
///   mixed-volume  (2^n / n!) |det|                (order n)
///   identity      first coordinate of x_1         (order 1)
///   constant      1                               (order 1)
std::vector<std::string> kernel_labels();
UStatKernel make_kernel(const std::string& label, std::size_t n);

/// Vector law for nested sampling: fills one vector of length dim.
using VectorLaw = std::function<void(SeededStream&, std::span<double>)>;
VectorLaw gaussian_law();

/// (1/C(N,m)) sum of h over all m-subsets of the columns of data.
double exact_ustat(const UStatKernel& k, const ColumnMatrix& data, unsigned threads = 0);

struct IncompleteEstimate {
  double value = 0.0;
  double std_error = 0.0;  ///< sample standard deviation of kernel values / sqrt(draws)
  std::size_t draws = 0;
};

/// Average of h over `draws` subsets drawn uniformly (with replacement across draws).
IncompleteEstimate incomplete_ustat(const UStatKernel& k, const ColumnMatrix& data, std::size_t draws,
                                    SeededStream& s);

struct ZetaEstimate {
  double zeta_hat = 0.0;  ///< bias-corrected, clamped at 0
  double zeta_raw = 0.0;  ///< bias-corrected, before clamping
  double std_error = 0.0;
  std::size_t outer_count = 0;
  std::size_t inner_count = 0;
  bool clamped = false;
};

inline constexpr std::size_t kZetaMinDraws = 100;
inline constexpr std::size_t kZetaBatches = 20;

/// For each of `outer` draws of X_1, averages h over `inner` fresh draws of
/// X_2..X_m. zeta_hat is the sample variance of those conditional means minus
/// the mean within-draw variance divided by `inner`. std_error comes from
/// kZetaBatches contiguous batches of outer draws. Outer draw i uses
/// s.child(i), so the result does not depend on `threads`.
ZetaEstimate estimate_zeta(const UStatKernel& k, std::size_t dim, const VectorLaw& law, std::size_t outer,
                           std::size_t inner, const SeededStream& s, unsigned threads = 0);

struct VarianceCheckRow {
  std::size_t N = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ratio = 0.0;  ///< N Var(U_N) / (m^2 zeta)
};

/// Var(U_N) from `replications` independent data sets of N Gaussian vectors
/// in R^dim, compared with m^2 zeta / N. With zeta == 0 the ratio is reported as 0.
std::vector<VarianceCheckRow> ustat_variance_check(const UStatKernel& k, std::size_t dim,
                                                   std::span<const std::size_t> N_grid, std::size_t replications,
                                                   double zeta, const SeededStream& s, unsigned threads = 0);

}  // namespace zonoclt
