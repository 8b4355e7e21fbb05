#include "zonoclt/ustat.hpp"

#include <array>
#include <cmath>
#include <random>

#include "zonoclt/error.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/stats.hpp"
#include "zonoclt/subsets.hpp"

namespace zonoclt {

namespace {

UStatKernel det_kernel(std::string label, std::size_t n, std::function<double(double)> of_abs_det) {
  return UStatKernel{n,
                     [n, f = std::move(of_abs_det)](const KernelArgs& a) {
                       if (a.dim != n) throw_invalid("determinant kernel: vectors must lie in R^n");
                       return f(abs_det_columns(a.vectors, n));
                     },
                     std::move(label)};
}

}  // namespace

std::vector<std::string> kernel_labels() {
  return {"abs-det", "det-sq", "clt-combined", "mixed-volume", "identity", "constant"};
}

UStatKernel make_kernel(const std::string& label, std::size_t n) {
  if (n == 0) throw_invalid("make_kernel: n must be >= 1");
  if (label == "abs-det") return det_kernel(label, n, [](double d) { return d; });
  if (label == "det-sq") return det_kernel(label, n, [](double d) { return d * d; });
  if (label == "clt-combined") {
    const double two_n = std::ldexp(1.0, static_cast<int>(n));
    const double b = beta_n(n);
    return det_kernel(label, n, [two_n, b](double d) { return two_n * d - b * d * d; });
  }
  if (label == "mixed-volume") {
    const double c = std::ldexp(1.0, static_cast<int>(n)) / std::tgamma(static_cast<double>(n) + 1.0);
    return det_kernel(label, n, [c](double d) { return c * d; });
  }
  if (label == "identity") return UStatKernel{1, [](const KernelArgs& a) { return a.vectors[0][0]; }, label};
  if (label == "constant") return UStatKernel{1, [](const KernelArgs&) { return 1.0; }, label};
  std::string known;
  for (const auto& l : kernel_labels()) known += (known.empty() ? "" : ", ") + l;
  throw_invalid("unknown kernel label '" + label + "' (known: " + known + ")");
}

VectorLaw gaussian_law() {
  return [](SeededStream& s, std::span<double> out) {
    for (double& x : out) x = s.normal();
  };
}

double exact_ustat(const UStatKernel& k, const ColumnMatrix& data, unsigned threads) {
  const std::size_t m = k.order;
  const std::size_t N = data.ncols();
  if (m == 0 || m > kMaxSubsetSize) throw_invalid("exact_ustat: kernel order out of range");
  if (N < m) throw_invalid("exact_ustat: need N >= m, got N=" + std::to_string(N) + " m=" + std::to_string(m));
  const std::size_t dim = data.dim();
  const double sum = sum_over_subsets(
      N, m,
      [&](std::span<const std::size_t> idx) {
        std::array<const double*, kMaxSubsetSize> cols{};
        for (std::size_t i = 0; i < m; ++i) cols[i] = data.column(idx[i]).data();
        return k(KernelArgs{std::span<const double* const>(cols.data(), m), dim});
      },
      threads, "exact_ustat");
  return sum / binomial_real(N, m);
}

IncompleteEstimate incomplete_ustat(const UStatKernel& k, const ColumnMatrix& data, std::size_t draws,
                                    SeededStream& s) {
  const std::size_t m = k.order;
  const std::size_t N = data.ncols();
  if (draws == 0) throw_invalid("incomplete_ustat: draws must be >= 1");
  if (m == 0 || m > kMaxSubsetSize || N < m) throw_invalid("incomplete_ustat: need 1 <= m <= N");
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  std::vector<double> values(draws);
  std::array<std::size_t, kMaxSubsetSize> idx{};
  std::array<const double*, kMaxSubsetSize> cols{};
  for (std::size_t d = 0; d < draws; ++d) {
    // Distinct indices by rejection; m is tiny compared with N in practice.
    for (std::size_t i = 0; i < m;) {
      const std::size_t c = pick(s);
      bool dup = false;
      for (std::size_t j = 0; j < i; ++j) dup = dup || idx[j] == c;
      if (!dup) idx[i++] = c;
    }
    for (std::size_t i = 0; i < m; ++i) cols[i] = data.column(idx[i]).data();
    values[d] = k(KernelArgs{std::span<const double* const>(cols.data(), m), data.dim()});
  }
  IncompleteEstimate est;
  est.draws = draws;
  est.value = sample_mean(values);
  est.std_error = std::sqrt(sample_variance(values) / static_cast<double>(draws));
  return est;
}

namespace {

double corrected_zeta(std::span<const double> cond_means, std::span<const double> within_vars, std::size_t inner) {
  return sample_variance(cond_means) - sample_mean(within_vars) / static_cast<double>(inner);
}

}  // namespace

ZetaEstimate estimate_zeta(const UStatKernel& k, std::size_t dim, const VectorLaw& law, std::size_t outer,
                           std::size_t inner, const SeededStream& s, unsigned threads) {
  if (outer < kZetaMinDraws || inner < kZetaMinDraws)
    throw_invalid("estimate_zeta: outer and inner must both be >= " + std::to_string(kZetaMinDraws));
  const std::size_t m = k.order;
  if (m == 0 || m > kMaxSubsetSize) throw_invalid("estimate_zeta: kernel order out of range");
  if (dim == 0) throw_invalid("estimate_zeta: dim must be >= 1");

  std::vector<double> cond_mean(outer);
  std::vector<double> within_var(outer);
  parallel_for(outer, threads, [&](std::size_t i) {
    SeededStream si = s.child(i);
    std::vector<double> buf(m * dim);
    std::array<const double*, kMaxSubsetSize> ptrs{};
    for (std::size_t a = 0; a < m; ++a) ptrs[a] = buf.data() + a * dim;
    law(si, std::span<double>(buf.data(), dim));
    // Welford over the inner draws of X_2..X_m.
    double mean = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < inner; ++j) {
      for (std::size_t a = 1; a < m; ++a) law(si, std::span<double>(buf.data() + a * dim, dim));
      const double h = k(KernelArgs{std::span<const double* const>(ptrs.data(), m), dim});
      const double d = h - mean;
      mean += d / static_cast<double>(j + 1);
      m2 += d * (h - mean);
    }
    cond_mean[i] = mean;
    within_var[i] = m2 / static_cast<double>(inner - 1);
  });

  ZetaEstimate est;
  est.outer_count = outer;
  est.inner_count = inner;
  est.zeta_raw = corrected_zeta(cond_mean, within_var, inner);

  std::vector<double> batch(kZetaBatches);
  const std::size_t per = outer / kZetaBatches;
  for (std::size_t b = 0; b < kZetaBatches; ++b) {
    const std::size_t lo = b * per;
    const std::size_t len = b + 1 == kZetaBatches ? outer - lo : per;
    batch[b] = corrected_zeta(std::span<const double>(cond_mean).subspan(lo, len),
                              std::span<const double>(within_var).subspan(lo, len), inner);
  }
  est.std_error = std::sqrt(sample_variance(batch) / static_cast<double>(kZetaBatches));
  est.clamped = est.zeta_raw < 0.0;
  est.zeta_hat = est.clamped ? 0.0 : est.zeta_raw;
  return est;
}

std::vector<VarianceCheckRow> ustat_variance_check(const UStatKernel& k, std::size_t dim,
                                                   std::span<const std::size_t> N_grid, std::size_t replications,
                                                   double zeta, const SeededStream& s, unsigned threads) {
  if (replications < 2) throw_invalid("ustat_variance_check: need at least two replications");
  std::vector<VarianceCheckRow> rows;
  const double m = static_cast<double>(k.order);
  for (std::size_t N : N_grid) {
    check_subset_budget(N, k.order, "ustat_variance_check");
    const SeededStream sn = s.child(N);
    std::vector<double> u(replications);
    parallel_for(replications, threads, [&](std::size_t r) {
      SeededStream sr = sn.child(r);
      u[r] = exact_ustat(k, sample_gaussian_matrix(dim, N, sr), 1);
    });
    VarianceCheckRow row;
    row.N = N;
    row.mean = sample_mean(u);
    row.variance = sample_variance(u);
    row.ratio = zeta > 0.0 ? static_cast<double>(N) * row.variance / (m * m * zeta) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zonoclt
