#pragma once

// Closed-form Gaussian moment constants. Factorial-scale quantities are
// evaluated in log space and exponentiated once.

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace zonoclt {

/// log Gamma(x + a) - log Gamma(x) for x > 0, x + a > 0. Uses an asymptotic
/// expansion for large x so ratios like Gamma((k+1)/2) / Gamma(k/2) keep full
/// relative precision at k ~ 10^4.
double log_gamma_ratio(double x, double a);

/// E chi_k^p = 2^{p/2} Gamma((k+p)/2) / Gamma(k/2).
double chi_moment(std::size_t k, double p);

/// Delta_{n,p} = (E |det[g_1 ... g_n]|^p)^{1/p} = (prod_{k=1}^n E chi_k^p)^{1/p}.
double delta_np(std::size_t n, double p);

/// beta_n = 2^{n-1} Delta_{n,1} / Delta_{n,2}^2.
double beta_n(std::size_t n);

/// E D_n for D_n = |det[theta_1 ... theta_n]|, theta_i uniform on S^{n-1}.
double expected_dn(std::size_t n);

/// zeta_1 = 4^n Var(R) (E R)^{2(n-1)} (E D_n)^2 with R = ||g|| ~ chi_n.
double zeta1(std::size_t n);

/// Hoeffding projection variance of the kernel 2^n |det| - beta_n det^2 under
/// the Gaussian law: Var(2^n Delta_{n-1,1} R - beta_n (n-1)! R^2), R ~ chi_n.
double zeta_clt_combined(std::size_t n);

/// c_n = n^2 zeta_1 / (n!)^2, the limit of Var X_N / N^{2n-1}.
double cn_limit(std::size_t n);

double xn_mean(std::size_t n, std::size_t N);        // 2^n C(N,n) Delta_{n,1}
double yn_mean(std::size_t n, std::size_t N);        // prod_{k=N-n+1}^N E chi_k
double yn_second_moment(std::size_t n, std::size_t N);  // N! / (N-n)!
double yn_var(std::size_t n, std::size_t N);         // E Y^2 - (E Y)^2

struct MomentEntry {
  double value = 0.0;
  std::string note;
};

/// Immutable table of the constants above for one dimension n (and optionally one N).
class MomentTable {
 public:
  explicit MomentTable(std::size_t n, std::optional<std::size_t> N = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  std::optional<std::size_t> N() const noexcept { return N_; }
  const std::map<std::string, MomentEntry>& entries() const noexcept { return entries_; }
  double at(const std::string& name) const;

  std::string to_json(int indent = 2) const;

 private:
  std::size_t n_;
  std::optional<std::size_t> N_;
  std::map<std::string, MomentEntry> entries_;
};

}  // namespace zonoclt
