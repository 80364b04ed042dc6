#include "agealg/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "agealg/error.hpp"

namespace agealg {

IntPoly::IntPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(std::size_t degree, const BigInt& c) {
  std::vector<BigInt> v(degree + 1, 0);
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::one_minus_power(std::size_t a) {
  std::vector<BigInt> v(a + 1, 0);
  v[0] += 1;
  v[a] -= 1;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::at_one() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

bool IntPoly::nonnegative() const {
  for (const auto& c : coeffs_) {
    if (c < 0) return false;
  }
  return true;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  auto v = coeffs_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw InputError("division by the zero polynomial");
  const BigInt lead = divisor.coeffs_.back();
  if (lead != 1 && lead != -1) throw InputError("divide_exact: divisor must have unit leading coefficient");
  if (is_zero()) return IntPoly{};
  if (degree() < divisor.degree()) return std::nullopt;
  auto rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  std::vector<BigInt> quot(rem.size() - dd, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const BigInt q = rem[i + dd] * lead;  // lead is its own inverse
    quot[i] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q * divisor.coeffs_[j];
  }
  for (const auto& r : rem) {
    if (r != 0) return std::nullopt;
  }
  return IntPoly(std::move(quot));
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << "Z";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

const IntPoly& cyclotomic_factor(std::size_t d) {
  static std::mutex mutex;
  static std::map<std::size_t, IntPoly> cache;
  std::lock_guard lock(mutex);
  if (d == 0) throw InputError("cyclotomic_factor: d must be positive");
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  // 1 - Z^d divided by the factors of its proper divisors.
  IntPoly p = IntPoly::one_minus_power(d);
  for (std::size_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto found = cache.find(e);
    IntPoly fe;
    if (found != cache.end()) {
      fe = found->second;
    } else {
      // Compute recursively without holding a stale iterator.
      IntPoly q = IntPoly::one_minus_power(e);
      for (std::size_t f = 1; f < e; ++f) {
        if (e % f == 0) q = *q.divide_exact(cache.at(f));
      }
      cache.emplace(e, q);
      fe = q;
    }
    p = *p.divide_exact(fe);
  }
  return cache.emplace(d, std::move(p)).first->second;
}

IntSeries::IntSeries(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {}

IntSeries IntSeries::from_fraction(const IntPoly& numerator, const std::vector<std::size_t>& denominator_degrees,
                                   std::size_t order) {
  std::vector<BigInt> v(order + 1, 0);
  for (std::size_t i = 0; i <= order; ++i) v[i] = numerator.coefficient(i);
  for (std::size_t a : denominator_degrees) {
    if (a == 0) throw InputError("denominator degree must be positive");
    // Multiply by 1/(1 - Z^a): running sums with stride a.
    for (std::size_t i = a; i <= order; ++i) v[i] += v[i - a];
  }
  return IntSeries(std::move(v));
}

IntSeries IntSeries::times(const IntPoly& p) const {
  std::vector<BigInt> v(coeffs_.size(), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j <= i && j < p.coefficients().size(); ++j) v[i] += coeffs_[i - j] * p.coefficients()[j];
  }
  return IntSeries(std::move(v));
}

IntSeries IntSeries::truncated(std::size_t order) const {
  if (order + 1 > coeffs_.size()) throw InputError("cannot extend a series past its order");
  return IntSeries(std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

bool IntSeries::nondecreasing() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] < coeffs_[i - 1]) return false;
  }
  return true;
}

}  // namespace agealg
