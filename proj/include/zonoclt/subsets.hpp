#pragma once

// Lexicographic enumeration of k-subsets of {0, ..., N-1}, split into
// fixed-size contiguous chunks. Chunk boundaries depend only on (N, k), so
// sums are bit-identical for any thread count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zonoclt/parallel.hpp"

namespace zonoclt {

/// Largest C(N, k) any exact enumeration will accept.
inline constexpr std::uint64_t kSubsetBudget = 100'000'000;
inline constexpr std::uint64_t kSubsetChunk = 1u << 14;
inline constexpr std::size_t kMaxSubsetSize = 16;

/// Exact C(N, k); saturates to UINT64_MAX on overflow.
std::uint64_t binomial(std::size_t N, std::size_t k);

/// C(N, k) as a double, through lgamma for large arguments.
double binomial_real(std::size_t N, std::size_t k);

/// Throws ResourceLimit naming C(N, k) when it exceeds kSubsetBudget.
void check_subset_budget(std::size_t N, std::size_t k, const char* what);

/// Writes the subset of lexicographic rank `rank` into out (size k, increasing).
void unrank_subset(std::uint64_t rank, std::size_t N, std::span<std::size_t> out);

/// Advances to the lexicographic successor; false when idx was the last subset.
bool next_subset(std::span<std::size_t> idx, std::size_t N);

/// Sum of term(idx) over every k-subset idx of {0..N-1}. Each chunk is summed
/// sequentially; chunk partials are combined by pairwise summation.
template <class Term>
double sum_over_subsets(std::size_t N, std::size_t k, Term&& term, unsigned threads,
                        const char* what = "subset enumeration") {
  check_subset_budget(N, k, what);
  const std::uint64_t total = binomial(N, k);
  if (total == 0) return 0.0;
  const std::uint64_t nchunks = (total + kSubsetChunk - 1) / kSubsetChunk;
  std::vector<double> partial(nchunks, 0.0);
  parallel_for(nchunks, threads, [&](std::size_t c) {
    std::array<std::size_t, kMaxSubsetSize> buf{};
    std::span<std::size_t> idx(buf.data(), k);
    const std::uint64_t begin = c * kSubsetChunk;
    const std::uint64_t end = std::min(total, begin + kSubsetChunk);
    unrank_subset(begin, N, idx);
    double s = 0.0;
    for (std::uint64_t r = begin; r < end; ++r) {
      s += term(std::span<const std::size_t>(idx));
      if (r + 1 < end) next_subset(idx, N);
    }
    partial[c] = s;
  });
  return pairwise_sum(partial);
}

}  // namespace zonoclt
