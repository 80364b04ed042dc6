#pragma once

// Hilbert series of age algebras: rational forms P / prod(1 - Z^{n_i}),
// monomial ideals over weighted variables, layers of monomials, the chain-wise
// assembly from leading monomials, exact rational fitting of a profile series
// and quasi-polynomial extraction.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agealg/ageprofile.hpp"
#include "agealg/block_template.hpp"
#include "agealg/numeric.hpp"
#include "agealg/polynomial.hpp"

namespace agealg {

/// numerator / prod_i (1 - Z^{denominator[i]}); denominator degrees kept sorted.
struct HilbertForm {
  IntPoly numerator;
  std::vector<std::size_t> denominator;

  IntSeries expand(std::size_t order) const;
  /// "(1 + Z^3)/((1 - Z)(1 - Z^2))"
  std::string str() const;

  bool operator==(const HilbertForm&) const = default;
};

/// numerator / prod_d F_d^{e_d} with F_1 = 1 - Z and F_d the d-th cyclotomic
/// polynomial for d > 1. Every factor has constant term 1, so the reduced
/// form of a rational function is unique.
struct RationalForm {
  IntPoly numerator;
  std::map<std::size_t, std::size_t> factors;  // d -> e_d, no zero exponents

  static RationalForm from(const HilbertForm& h);
  /// Cancels every cyclotomic factor shared by numerator and denominator.
  RationalForm reduced() const;
  /// Order of the pole at Z = 1 (exponent of F_1) of the reduced form.
  std::size_t pole_order() const;
  RationalForm operator+(const RationalForm& o) const;
  RationalForm operator-(const RationalForm& o) const;

  bool operator==(const RationalForm&) const = default;
};

/// Canonical representative of a rational function with pole order k at 1:
/// among forms with k denominator factors of degree <= max(k, largest
/// cyclotomic index of the reduced denominator), prefer a numerator with
/// nonnegative coefficients, then the smallest numerator degree, then the
/// lexicographically smallest denominator. Falls back to more factors only
/// when no k-factor form exists.
HilbertForm canonical_form(const RationalForm& r);
HilbertForm canonical_form(const HilbertForm& h);

/// Searches forms with up to `extra` more denominator factors than the
/// canonical one (factor degrees bounded as in canonical_form, plus `extra`)
/// for a numerator with nonnegative coefficients. Completeness is not claimed.
std::optional<HilbertForm> nonnegative_form(const HilbertForm& h, std::size_t extra = 2);

/// Monomial ideal of K[x_1..x_v] with deg x_i = degrees[i]. Generators are
/// reduced to the minimal ones and sorted.
class WeightedMonomialIdeal {
 public:
  WeightedMonomialIdeal() = default;
  WeightedMonomialIdeal(std::vector<std::size_t> degrees, std::vector<std::vector<std::uint32_t>> generators);

  const std::vector<std::size_t>& degrees() const { return degrees_; }
  const std::vector<std::vector<std::uint32_t>>& generators() const { return generators_; }
  std::size_t variables() const { return degrees_.size(); }
  std::size_t weight(const std::vector<std::uint32_t>& monomial) const;
  bool contains(const std::vector<std::uint32_t>& monomial) const;
  bool is_zero() const { return generators_.empty(); }

 private:
  std::vector<std::size_t> degrees_;
  std::vector<std::vector<std::uint32_t>> generators_;
};

struct IdealHilbert {
  HilbertForm form;  // denominator = the variable degrees, not reduced
  IntSeries series;  // number of degree-n monomials in the ideal, n <= D
};

/// Inclusion-exclusion over generator lcms (organized as the colon-ideal recursion).
IdealHilbert ideal_hilbert(const WeightedMonomialIdeal& I, std::size_t D);

struct Layer {
  std::vector<std::size_t> support;  // sorted block indices
  std::uint32_t exponent = 0;

  bool operator==(const Layer&) const = default;
};

/// Square-free factorization m = x_{S_1}^{e_1} ... x_{S_r}^{e_r} with S_1 < ... < S_r.
/// InputError on the zero monomial.
std::vector<Layer> layers(const Composition& m);

/// Chain support: the supports of the layers, innermost first.
std::vector<std::vector<std::size_t>> chain_support(const Composition& m);

/// Leading monomial of a realized type.
Composition leading_monomial(TypeRegistry& reg, const IsoType& type);

struct AddLayerViolation {
  Composition monomial;
  std::vector<std::size_t> layer;
};

struct AddLayerReport {
  std::size_t degree = 0;
  std::size_t checked = 0;
  std::size_t exempt = 0;  // layer meets a saturated finite block
  std::vector<AddLayerViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks m * x_S is a leading monomial for every leading monomial m, layer S
/// of m with deg(m) + |S| <= D, unless S meets a block that m already fills.
AddLayerReport check_addlayer(TypeRegistry& reg, std::size_t D);

struct ChainContribution {
  std::vector<std::vector<std::size_t>> chain;
  WeightedMonomialIdeal J;
  WeightedMonomialIdeal I;
};

struct LeadingHilbert {
  HilbertForm form;  // canonical
  std::vector<ChainContribution> chains;
  std::size_t generator_bound = 0;
};

/// Hilbert series assembled chain by chain from leading monomials of degree
/// <= B. UndeterminedError if some chain has a minimal generator too close to
/// B to trust the scan; ConsistencyError if the result does not reproduce the
/// profile through degree D.
LeadingHilbert hilbert_via_leading(TypeRegistry& reg, std::size_t D, std::size_t B);

inline constexpr std::size_t kDefaultGuard = 5;

/// Fits series = P / prod_{i<=k}(1 - Z^i) exactly and returns the canonical
/// form. FitError unless the last `guard` coefficients of P (at least) vanish.
HilbertForm fit_rational(const IntSeries& series, std::size_t k, std::size_t guard = kDefaultGuard);

struct QuasiPolynomial {
  std::size_t period = 1;
  /// Values at n >= n_min are given by the polynomials.
  std::size_t n_min = 0;
  /// residues[r][j]: coefficient of n^j for n = r mod period.
  std::vector<std::vector<Rational>> residues;

  Rational operator()(std::size_t n) const;
  /// Largest degree over the residues (-1 when all vanish).
  long degree() const;
  /// Coefficient of n^degree() when it agrees across residues.
  std::optional<Rational> leading_coefficient() const;
};

QuasiPolynomial quasi_polynomial(const HilbertForm& h);

}  // namespace agealg
