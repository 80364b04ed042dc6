#pragma once

// Total order on monomials of K[X] used to pick leading monomials: compare
// shapes in degree reverse lexicographic order, then break ties by the plain
// lexicographic order of exponent vectors in block declaration order.
// Well founded, but not a monomial order.

#include <compare>
#include <cstdint>
#include <span>

#include "agealg/block_template.hpp"

namespace agealg {

/// Reverse lexicographic comparison of equal-length sequences: a < b iff
/// a_i > b_i at the largest index i where they differ.
std::strong_ordering revlex_compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Total degree first, then revlex.
std::strong_ordering degrevlex_compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Shapes by degrevlex, ties by lex on exponents.
std::strong_ordering compare_monomials(const Composition& a, const Composition& b);

}  // namespace agealg
