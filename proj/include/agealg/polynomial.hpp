#pragma once

// Exact integer polynomials in Z and truncated integer power series.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agealg/numeric.hpp"

namespace agealg {

/// Dense polynomial with arbitrary-precision integer coefficients, lowest degree first.
/// Always trimmed: no trailing zero coefficients (the zero polynomial is empty).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coefficients);
  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(std::size_t degree, const BigInt& c = 1);
  /// 1 - Z^a
  static IntPoly one_minus_power(std::size_t a);

  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  BigInt at_one() const;
  bool nonnegative() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  /// Exact quotient by a divisor with leading coefficient +-1; nullopt if the remainder is nonzero.
  std::optional<IntPoly> divide_exact(const IntPoly& divisor) const;

  /// Human-readable form such as "1 - Z + 2Z^2".
  std::string str() const;

  bool operator==(const IntPoly&) const = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Cyclotomic polynomial Phi_d, except that d = 1 gives 1 - Z (so that
/// 1 - Z^a is the product of cyclotomic_factor(e) over the divisors e of a).
const IntPoly& cyclotomic_factor(std::size_t d);

/// Truncated power series: coefficients of Z^0..Z^order. Arithmetic never goes past the order.
class IntSeries {
 public:
  IntSeries() = default;
  explicit IntSeries(std::vector<BigInt> coefficients);
  /// Expansion of numerator / prod (1 - Z^{d_i}) through Z^order.
  static IntSeries from_fraction(const IntPoly& numerator, const std::vector<std::size_t>& denominator_degrees,
                                 std::size_t order);

  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  std::size_t order() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::size_t length() const { return coeffs_.size(); }
  const BigInt& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Product with a polynomial, truncated at this series' order.
  IntSeries times(const IntPoly& p) const;
  IntSeries truncated(std::size_t order) const;
  bool nondecreasing() const;

  bool operator==(const IntSeries&) const = default;

 private:
  std::vector<BigInt> coeffs_;
};

}  // namespace agealg
