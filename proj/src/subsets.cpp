#include "zonoclt/subsets.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "zonoclt/error.hpp"

namespace zonoclt {

std::uint64_t binomial(std::size_t N, std::size_t k) {
  if (k > N) return 0;
  k = std::min(k, N - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  __extension__ using u128 = unsigned __int128;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (N - k + i) / i stays integral at every step.
    const std::uint64_t num = N - k + i;
    const u128 wide = static_cast<u128>(r) * num / i;
    if (wide > kMax) return kMax;
    r = static_cast<std::uint64_t>(wide);
  }
  return r;
}

double binomial_real(std::size_t N, std::size_t k) {
  if (k > N) return 0.0;
  const std::uint64_t exact = binomial(N, k);
  if (exact < (std::uint64_t{1} << 53)) return static_cast<double>(exact);
  return std::exp(std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0));
}

void check_subset_budget(std::size_t N, std::size_t k, const char* what) {
  if (k > kMaxSubsetSize)
    throw Error(ErrorCode::ResourceLimit, std::string(what) + ": subset size " + std::to_string(k) + " exceeds " +
                                              std::to_string(kMaxSubsetSize));
  const std::uint64_t c = binomial(N, k);
  if (c > kSubsetBudget) {
    const std::string count = c == std::numeric_limits<std::uint64_t>::max() ? "> 2^64" : std::to_string(c);
    throw Error(ErrorCode::ResourceLimit, std::string(what) + ": C(" + std::to_string(N) + "," + std::to_string(k) +
                                              ") = " + count + " exceeds the budget of " +
                                              std::to_string(kSubsetBudget) + " subsets");
  }
}

void unrank_subset(std::uint64_t rank, std::size_t N, std::span<std::size_t> out) {
  const std::size_t k = out.size();
  std::size_t x = 0;
  for (std::size_t i = 0; i < k; ++i) {
    // Skip blocks of subsets whose i-th element is x.
    for (;;) {
      const std::uint64_t block = binomial(N - x - 1, k - i - 1);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    out[i] = x++;
  }
}

bool next_subset(std::span<std::size_t> idx, std::size_t N) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < N - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace zonoclt
