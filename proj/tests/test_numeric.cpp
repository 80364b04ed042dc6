#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "agealg/numeric.hpp"
#include "agealg/polynomial.hpp"
#include "oracles.hpp"

using namespace agealg;

namespace {

IntPoly poly(std::initializer_list<long> c) { return IntPoly(std::vector<BigInt>(c.begin(), c.end())); }

IntPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coeff(-5, 5);
  std::vector<BigInt> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  return IntPoly(c);
}

}  // namespace

TEST_CASE("binomials follow Pascal's rule") {
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(binomial(n, 0) == 1);
    CHECK(binomial(n, n + 1) == 0);
    for (std::size_t k = 1; k <= n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("partition counts") {
  CHECK(partitions_at_most(2, 4) == 3);
  for (std::size_t k = 0; k <= 6; ++k) {
    for (std::size_t m = 0; m <= 25; ++m) CHECK(partitions_at_most(k, m) == oracle::partitions(k, m));
  }
  CHECK(partitions_at_most(100, 100) == 190569292);
}

TEST_CASE("gcd and lcm") {
  CHECK(gcd_u64(12, 18) == 6);
  CHECK(gcd_u64(0, 7) == 7);
  CHECK(lcm_u64(4, 6) == 12);
  CHECK(lcm_u64(1, 9) == 9);
}

TEST_CASE("rational rank") {
  CHECK(rational_rank({}) == 0);
  CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(rational_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(rational_rank({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
  CHECK(rational_rank({{2, 0}, {0, 3}, {1, 1}}) == 2);
  // Random products A*B have rank at most the inner dimension.
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int round = 0; round < 40; ++round) {
    const std::size_t r = 1 + round % 4, rows = 5, cols = 6;
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(r)), b(r, std::vector<BigInt>(cols));
    for (auto& row : a)
      for (auto& x : row) x = entry(rng);
    for (auto& row : b)
      for (auto& x : row) x = entry(rng);
    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < r; ++k) m[i][j] += a[i][k] * b[k][j];
    CHECK(rational_rank(m) <= r);
    CHECK(rational_rank(m) == oracle::rank(m));
  }
}

TEST_CASE("polynomial basics") {
  const IntPoly p = poly({1, -1, 2});
  CHECK(p.degree() == 2);
  CHECK(p.at_one() == 2);
  CHECK_FALSE(p.nonnegative());
  CHECK(p.str() == "1 - Z + 2Z^2");
  CHECK(IntPoly().degree() == -1);
  CHECK(IntPoly().str() == "0");
  CHECK(poly({0, 0, 0}).is_zero());
  CHECK(IntPoly::one_minus_power(3) == poly({1, 0, 0, -1}));
  CHECK(IntPoly::monomial(2, 5) == poly({0, 0, 5}));
  CHECK((poly({1, 1}) * poly({1, -1})) == poly({1, 0, -1}));
  CHECK(poly({1, 0, -1}).divide_exact(poly({1, -1})) == poly({1, 1}));
  CHECK_FALSE(poly({1, 0, 1}).divide_exact(poly({1, -1})));
}

TEST_CASE("property: ring laws and exact division") {
  std::mt19937 rng(10);
  for (int round = 0; round < 200; ++round) {
    const auto a = random_poly(rng, 6), b = random_poly(rng, 5), c = random_poly(rng, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == IntPoly());
    CHECK(-(-a) == a);
    // Monic divisor: the quotient comes back exactly.
    const IntPoly monic = IntPoly::monomial(3) + random_poly(rng, 2);
    CHECK((a * monic).divide_exact(monic) == a);
  }
}

TEST_CASE("cyclotomic factors multiply to 1 - Z^n") {
  CHECK(cyclotomic_factor(1) == poly({1, -1}));
  CHECK(cyclotomic_factor(2) == poly({1, 1}));
  CHECK(cyclotomic_factor(6) == poly({1, -1, 1}));
  for (std::size_t n = 1; n <= 30; ++n) {
    IntPoly product = IntPoly::constant(1);
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) product *= cyclotomic_factor(d);
    }
    CHECK(product == IntPoly::one_minus_power(n));
  }
}

TEST_CASE("series expansion of fractions") {
  const auto s = IntSeries::from_fraction(poly({1, 0, 0, 1}), {1, 2}, 10);
  CHECK(s.coefficients() == oracle::expand({1, 0, 0, 1}, {1, 2}, 10));
  CHECK(s.nondecreasing());
  CHECK(s.order() == 10);
  CHECK(s.truncated(3).coefficients() == std::vector<BigInt>{1, 1, 2, 3});
  // Multiplying back by the denominator recovers the numerator.
  const auto back = s.times(IntPoly::one_minus_power(1) * IntPoly::one_minus_power(2));
  CHECK(back.coefficients() == std::vector<BigInt>{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0});
  std::mt19937 rng(12);
  for (int round = 0; round < 50; ++round) {
    std::vector<long> num;
    for (int i = 0; i < 4; ++i) num.push_back(static_cast<long>(rng() % 7) - 3);
    std::vector<std::size_t> den;
    for (int i = 0; i < 1 + round % 3; ++i) den.push_back(1 + rng() % 4);
    std::vector<BigInt> big(num.begin(), num.end());
    CHECK(IntSeries::from_fraction(IntPoly(big), den, 15).coefficients() == oracle::expand(num, den, 15));
  }
}
