#include "agealg/numeric.hpp"

#include <utility>

namespace agealg {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt partitions_at_most(std::size_t k, std::size_t m) {
  // table[j] = partitions of j with parts of size <= current bound; parts <= k is
  // conjugate to at most k parts.
  std::vector<BigInt> table(m + 1, 0);
  table[0] = 1;
  for (std::size_t part = 1; part <= k; ++part) {
    for (std::size_t j = part; j <= m; ++j) table[j] += table[j - part];
  }
  return table[m];
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

std::size_t rational_rank(std::vector<std::vector<BigInt>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  BigInt prev_pivot = 1;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      for (std::size_t c = col + 1; c < ncols; ++c) {
        rows[r][c] = (rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / prev_pivot;
      }
      rows[r][col] = 0;
    }
    prev_pivot = rows[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace agealg
