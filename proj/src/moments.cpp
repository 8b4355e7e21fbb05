#include "zonoclt/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"

#include "zonoclt/error.hpp"
#include "zonoclt/subsets.hpp"

namespace zonoclt {

namespace {

// B_{2k} / (2k (2k - 1)) for k = 1..6.
constexpr double kStirling[] = {1.0 / 12.0,   -1.0 / 360.0, 1.0 / 1260.0,
                                -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0};

constexpr double kAsymptoticFrom = 12.0;

double stirling_tail(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double term = inv;
  double s = 0.0;
  for (double c : kStirling) {
    s += c * term;
    term *= inv2;
  }
  return s;
}

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

void require_dim(std::size_t n, const char* what) {
  if (n == 0) throw_invalid(std::string(what) + ": n must be >= 1");
}

void require_N(std::size_t n, std::size_t N, const char* what) {
  require_dim(n, what);
  if (N < n) throw_invalid(std::string(what) + ": need N >= n, got n=" + std::to_string(n) + " N=" + std::to_string(N));
}

}  // namespace

double log_gamma_ratio(double x, double a) {
  if (!(x > 0.0) || !(x + a > 0.0)) throw_invalid("log_gamma_ratio: arguments must be positive");
  if (a == 0.0) return 0.0;
  if (std::min(x, x + a) < kAsymptoticFrom) return std::lgamma(x + a) - std::lgamma(x);
  // (x+a-1/2) ln(x+a) - (x-1/2) ln x - a, rearranged to avoid cancellation.
  const double head = (x - 0.5) * std::log1p(a / x) + a * std::log(x + a) - a;
  return head + stirling_tail(x + a) - stirling_tail(x);
}

double chi_moment(std::size_t k, double p) {
  if (k == 0) throw_invalid("chi_moment: degrees of freedom must be >= 1");
  if (!(p >= 0.0)) throw_invalid("chi_moment: p must be >= 0");
  const double half_k = 0.5 * static_cast<double>(k);
  return std::exp(0.5 * p * std::numbers::ln2 + log_gamma_ratio(half_k, 0.5 * p));
}

double delta_np(std::size_t n, double p) {
  if (!(p > 0.0)) throw_invalid("delta_np: p must be > 0");
  double log_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) log_sum += std::log(chi_moment(k, p));
  return std::exp(log_sum / p);
}

double beta_n(std::size_t n) {
  require_dim(n, "beta_n");
  const double d2 = delta_np(n, 2.0);
  return std::ldexp(delta_np(n, 1.0), static_cast<int>(n) - 1) / (d2 * d2);
}

double expected_dn(std::size_t n) {
  require_dim(n, "expected_dn");
  const double mean_r = chi_moment(n, 1.0);
  return delta_np(n, 1.0) / std::pow(mean_r, static_cast<double>(n));
}

double zeta1(std::size_t n) {
  require_dim(n, "zeta1");
  const double mean_r = chi_moment(n, 1.0);
  const double var_r = static_cast<double>(n) - mean_r * mean_r;
  const double ed = expected_dn(n);
  return std::pow(4.0, static_cast<double>(n)) * var_r * std::pow(mean_r, 2.0 * (static_cast<double>(n) - 1.0)) *
         ed * ed;
}

double zeta_clt_combined(std::size_t n) {
  require_dim(n, "zeta_clt_combined");
  // Given g_1 = R theta, |det| = R |det'| with det' an (n-1)x(n-1) Gaussian determinant.
  const double a = std::ldexp(n > 1 ? delta_np(n - 1, 1.0) : 1.0, static_cast<int>(n));
  const double b = beta_n(n) * factorial(n - 1);
  const double m1 = chi_moment(n, 1.0);
  const double m2 = static_cast<double>(n);
  const double m3 = chi_moment(n, 3.0);
  const double m4 = m2 * (m2 + 2.0);
  const double var_r = m2 - m1 * m1;
  const double var_r2 = m4 - m2 * m2;
  const double cov = m3 - m1 * m2;
  return a * a * var_r + b * b * var_r2 - 2.0 * a * b * cov;
}

double cn_limit(std::size_t n) {
  require_dim(n, "cn_limit");
  const double nf = factorial(n);
  return static_cast<double>(n * n) * zeta1(n) / (nf * nf);
}

double xn_mean(std::size_t n, std::size_t N) {
  require_N(n, N, "xn_mean");
  return std::ldexp(binomial_real(N, n) * delta_np(n, 1.0), static_cast<int>(n));
}

double yn_mean(std::size_t n, std::size_t N) {
  require_N(n, N, "yn_mean");
  double log_sum = 0.0;
  for (std::size_t k = N - n + 1; k <= N; ++k)
    log_sum += 0.5 * std::numbers::ln2 + log_gamma_ratio(0.5 * static_cast<double>(k), 0.5);
  return std::exp(log_sum);
}

double yn_second_moment(std::size_t n, std::size_t N) {
  require_N(n, N, "yn_second_moment");
  double log_sum = 0.0;
  for (std::size_t k = N - n + 1; k <= N; ++k) log_sum += std::log(static_cast<double>(k));
  return std::exp(log_sum);
}

double yn_var(std::size_t n, std::size_t N) {
  const double m = yn_mean(n, N);
  return yn_second_moment(n, N) - m * m;
}

MomentTable::MomentTable(std::size_t n, std::optional<std::size_t> N) : n_(n), N_(N) {
  require_dim(n, "MomentTable");
  const double nf = factorial(n);
  const double z1 = zeta1(n);
  entries_["chi_mean"] = {chi_moment(n, 1.0), "E chi_n = sqrt(2) Gamma((n+1)/2) / Gamma(n/2)"};
  entries_["delta_n1"] = {delta_np(n, 1.0), "E |det[g_1..g_n]| = prod_{k<=n} E chi_k"};
  const double d2 = delta_np(n, 2.0);
  entries_["delta_n2_sq"] = {d2 * d2, "E det[g_1..g_n]^2 = n!"};
  entries_["beta_n"] = {beta_n(n), "2^{n-1} Delta_{n,1} / Delta_{n,2}^2"};
  entries_["expected_dn"] = {expected_dn(n), "E |det[theta_1..theta_n]| = Delta_{n,1} / (E chi_n)^n"};
  entries_["zeta1"] = {z1, "4^n Var(chi_n) (E chi_n)^{2(n-1)} (E D_n)^2"};
  entries_["zeta_mixed_volume"] = {z1 / (nf * nf), "Var E[V(x_1..x_n) | x_1] = zeta1 / (n!)^2"};
  entries_["zeta_abs_det"] = {z1 / std::pow(4.0, static_cast<double>(n)), "Var E[|det| | x_1] = zeta1 / 4^n"};
  entries_["zeta_clt_combined"] = {zeta_clt_combined(n), "Var E[2^n |det| - beta_n det^2 | x_1]"};
  entries_["cn_limit"] = {cn_limit(n), "n^2 zeta1 / (n!)^2 (limit of Var X_N / N^{2n-1})"};
  if (N) {
    require_N(n, *N, "MomentTable");
    const double Nd = static_cast<double>(*N);
    const double xm = xn_mean(n, *N);
    const double ym = yn_mean(n, *N);
    const double yv = yn_var(n, *N);
    entries_["xn_mean"] = {xm, "2^n C(N,n) Delta_{n,1}"};
    entries_["yn_mean"] = {ym, "prod_{k=N-n+1}^N E chi_k"};
    entries_["yn_second_moment"] = {yn_second_moment(n, *N), "N! / (N-n)!"};
    entries_["yn_var"] = {yv, "E Y_N^2 - (E Y_N)^2"};
    entries_["yn_var_scaled"] = {yv / std::pow(Nd, static_cast<double>(n) - 1.0), "Var Y_N / N^{n-1} (limit n/2)"};
    entries_["zn_mean"] = {xm / ym, "E X_N / E Y_N (Y_N and Z_N independent)"};
  }
}

double MomentTable::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw_invalid("MomentTable: no entry named '" + name + "'");
  return it->second.value;
}

std::string MomentTable::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["n"] = n_;
  if (N_) j["N"] = *N_;
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [name, e] : entries_) entries[name] = {{"value", e.value}, {"note", e.note}};
  j["entries"] = std::move(entries);
  return j.dump(indent);
}

}  // namespace zonoclt
