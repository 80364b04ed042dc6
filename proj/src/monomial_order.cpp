#include "agealg/monomial_order.hpp"

#include <algorithm>
#include <numeric>

#include "agealg/error.hpp"

namespace agealg {

std::strong_ordering revlex_compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw InputError("revlex_compare: sequences of different length");
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering degrevlex_compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  const auto sa = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto sb = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (sa != sb) return sa <=> sb;
  return revlex_compare(a, b);
}

std::strong_ordering compare_monomials(const Composition& a, const Composition& b) {
  if (a.blocks() != b.blocks()) throw InputError("compare_monomials: different block sets");
  const auto sa = a.shape();
  const auto sb = b.shape();
  if (auto c = degrevlex_compare(sa, sb); c != 0) return c;
  return a.counts() <=> b.counts();
}

}  // namespace agealg
