#include "zonoclt/random.hpp"

#include <cmath>
#include <string>

#include "zonoclt/error.hpp"

namespace zonoclt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& x) {
  x += kGolden;
  return mix64(x);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index) {
  std::uint64_t x = mix64(master_seed) ^ mix64(stream_index * kGolden + 0xD1B54A32D192ED03ull);
  for (auto& w : state_) w = splitmix_next(x);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

SeededStream SeededStream::child(std::uint64_t index) const {
  return SeededStream(mix64(master_ + 0x632BE59BD9B4E019ull * (index_ + 1)), index);
}

SeededStream::result_type SeededStream::operator()() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededStream::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double SeededStream::normal() { return normal_(*this); }

double SeededStream::gamma(double shape, double scale) {
  std::gamma_distribution<double> g(shape, scale);
  return g(*this);
}

ColumnMatrix sample_gaussian_matrix(std::size_t n, std::size_t N, SeededStream& s) {
  if (n == 0 || N == 0) throw_invalid("sample_gaussian_matrix: n and N must be positive");
  ColumnMatrix g(n, N);
  for (double& x : g.data()) x = s.normal();
  return g;
}

Vector sample_sphere(std::size_t n, SeededStream& s) {
  if (n == 0) throw_invalid("sample_sphere: n must be positive");
  Vector v(n);
  double r = 0.0;
  while (r == 0.0) {
    for (double& x : v) x = s.normal();
    r = norm2(v);
  }
  for (double& x : v) x /= r;
  return v;
}

double sample_chi(std::size_t k, SeededStream& s) {
  if (k == 0) throw_invalid("sample_chi: degrees of freedom must be >= 1");
  return std::sqrt(s.gamma(0.5 * static_cast<double>(k), 2.0));
}

GrassmannSample sample_grassmannian(std::size_t n, std::size_t N, SeededStream& s) {
  if (n == 0 || n > N)
    throw_invalid("sample_grassmannian: need 1 <= n <= N, got n=" + std::to_string(n) + " N=" + std::to_string(N));
  for (;;) {
    try {
      return GrassmannSample{orthonormalize_rows(sample_gaussian_matrix(n, N, s))};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient) throw;
    }
  }
}

double sample_ynfactor(std::size_t n, std::size_t N, SeededStream& s) {
  if (n == 0 || n > N)
    throw_invalid("sample_ynfactor: need 1 <= n <= N, got n=" + std::to_string(n) + " N=" + std::to_string(N));
  double y = 1.0;
  for (std::size_t k = N; k > N - n; --k) y *= sample_chi(k, s);
  return y;
}

}  // namespace zonoclt
