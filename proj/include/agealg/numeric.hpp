#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace agealg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k);

/// Number of integer partitions of m into at most k parts.
BigInt partitions_at_most(std::size_t k, std::size_t m);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Rank over the rationals, by fraction-free (Bareiss) elimination. The matrix is row-major.
std::size_t rational_rank(std::vector<std::vector<BigInt>> rows);

}  // namespace agealg
