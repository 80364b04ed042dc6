#include "agealg/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "agealg/error.hpp"

namespace agealg {

IntSeries HilbertForm::expand(std::size_t order) const {
  return IntSeries::from_fraction(numerator, denominator, order);
}

std::string HilbertForm::str() const {
  if (numerator.is_zero()) return "0";
  std::size_t terms = 0;
  for (const auto& c : numerator.coefficients()) terms += c != 0;
  std::string out = terms > 1 && !denominator.empty() ? "(" + numerator.str() + ")" : numerator.str();
  if (denominator.empty()) return out;
  std::ostringstream den;
  std::size_t groups = 0;
  for (std::size_t i = 0; i < denominator.size();) {
    std::size_t j = i;
    while (j < denominator.size() && denominator[j] == denominator[i]) ++j;
    den << "(" << IntPoly::one_minus_power(denominator[i]).str() << ")";
    if (j - i > 1) den << "^" << (j - i);
    ++groups;
    i = j;
  }
  return out + "/" + (groups > 1 ? "(" + den.str() + ")" : den.str());
}

namespace {

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

IntPoly power_of(const IntPoly& p, std::size_t e) {
  IntPoly out = IntPoly::constant(1);
  for (std::size_t i = 0; i < e; ++i) out *= p;
  return out;
}

std::map<std::size_t, std::size_t> factor_exponents(const std::vector<std::size_t>& degrees) {
  std::map<std::size_t, std::size_t> f;
  for (auto n : degrees) {
    if (n == 0) throw InputError("denominator degrees must be positive");
    for (auto d : divisors(n)) ++f[d];
  }
  return f;
}

}  // namespace

RationalForm RationalForm::from(const HilbertForm& h) { return {h.numerator, factor_exponents(h.denominator)}; }

RationalForm RationalForm::reduced() const {
  RationalForm r = *this;
  if (r.numerator.is_zero()) {
    r.factors.clear();
    return r;
  }
  for (auto it = r.factors.begin(); it != r.factors.end();) {
    const IntPoly& f = cyclotomic_factor(it->first);
    while (it->second > 0) {
      auto q = r.numerator.divide_exact(f);
      if (!q) break;
      r.numerator = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? r.factors.erase(it) : std::next(it);
  }
  return r;
}

std::size_t RationalForm::pole_order() const {
  const auto r = reduced();
  auto it = r.factors.find(1);
  return it == r.factors.end() ? 0 : it->second;
}

RationalForm RationalForm::operator+(const RationalForm& o) const {
  std::map<std::size_t, std::size_t> common = factors;
  for (const auto& [d, e] : o.factors) common[d] = std::max(common[d], e);
  auto lift = [&](const RationalForm& r) {
    IntPoly p = r.numerator;
    for (const auto& [d, e] : common) {
      auto it = r.factors.find(d);
      p *= power_of(cyclotomic_factor(d), e - (it == r.factors.end() ? 0 : it->second));
    }
    return p;
  };
  return RationalForm{lift(*this) + lift(o), common}.reduced();
}

RationalForm RationalForm::operator-(const RationalForm& o) const { return *this + RationalForm{-o.numerator, o.factors}; }

namespace {

// Nondecreasing sequences of length s over {1..N}.
template <typename Visit>
void for_each_multiset(std::size_t s, std::size_t N, Visit&& visit) {
  std::vector<std::size_t> v(s, 1);
  while (true) {
    visit(v);
    std::size_t i = s;
    while (i > 0 && v[i - 1] == N) --i;
    if (i == 0) return;
    ++v[i - 1];
    for (std::size_t j = i; j < s; ++j) v[j] = v[i - 1];
  }
}

// Numerator over prod(1 - Z^{degrees}) if the reduced denominator divides it.
std::optional<IntPoly> numerator_over(const RationalForm& r, const std::vector<std::size_t>& degrees) {
  const auto have = factor_exponents(degrees);
  IntPoly p = r.numerator;
  for (const auto& [d, e] : r.factors) {
    auto it = have.find(d);
    if (it == have.end() || it->second < e) return std::nullopt;
  }
  for (const auto& [d, e] : have) {
    auto it = r.factors.find(d);
    p *= power_of(cyclotomic_factor(d), e - (it == r.factors.end() ? 0 : it->second));
  }
  return p;
}

struct Candidate {
  HilbertForm form;
  bool nonneg = false;

  auto key() const { return std::make_tuple(!nonneg, form.numerator.degree(), form.denominator); }
};

std::optional<Candidate> best_of_size(const RationalForm& r, std::size_t s, std::size_t N, bool require_nonneg) {
  std::optional<Candidate> best;
  if (s == 0) {
    if (!r.factors.empty()) return std::nullopt;
    Candidate c{{r.numerator, {}}, r.numerator.nonnegative()};
    if (require_nonneg && !c.nonneg) return std::nullopt;
    return c;
  }
  for_each_multiset(s, N, [&](const std::vector<std::size_t>& degs) {
    auto p = numerator_over(r, degs);
    if (!p) return;
    Candidate c{{std::move(*p), degs}, false};
    c.nonneg = c.form.numerator.nonnegative();
    if (require_nonneg && !c.nonneg) return;
    if (!best || c.key() < best->key()) best = std::move(c);
  });
  return best;
}

std::size_t largest_index(const RationalForm& r) { return r.factors.empty() ? 0 : r.factors.rbegin()->first; }

}  // namespace

HilbertForm canonical_form(const RationalForm& form) {
  const RationalForm r = form.reduced();
  if (r.numerator.is_zero()) return {};
  const std::size_t k = r.pole_order();
  const std::size_t N = std::max<std::size_t>({k, largest_index(r), 1});
  std::size_t total = 0;
  for (const auto& [d, e] : r.factors) total += e;
  for (std::size_t s = k; s <= std::max(k, total); ++s) {
    if (auto c = best_of_size(r, s, N, false)) return c->form;
  }
  throw ConsistencyError("no denominator of the form prod(1 - Z^n) found");
}

HilbertForm canonical_form(const HilbertForm& h) { return canonical_form(RationalForm::from(h)); }

std::optional<HilbertForm> nonnegative_form(const HilbertForm& h, std::size_t extra) {
  const RationalForm r = RationalForm::from(h).reduced();
  if (r.numerator.is_zero()) return HilbertForm{};
  const HilbertForm canon = canonical_form(r);
  if (canon.numerator.nonnegative()) return canon;
  const std::size_t k = canon.denominator.size();
  const std::size_t N = std::max<std::size_t>({r.pole_order(), largest_index(r), 1}) + extra;
  for (std::size_t s = k; s <= k + extra; ++s) {
    if (auto c = best_of_size(r, s, N, true)) return c->form;
  }
  return std::nullopt;
}

namespace {

using Mono = std::vector<std::uint32_t>;

bool divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::vector<Mono> minimalize(std::vector<Mono> gens, const std::vector<std::size_t>& degrees) {
  auto weight = [&](const Mono& m) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * degrees[i];
    return w;
  };
  std::sort(gens.begin(), gens.end(), [&](const Mono& a, const Mono& b) {
    const auto wa = weight(a), wb = weight(b);
    return wa != wb ? wa < wb : a < b;
  });
  std::vector<Mono> kept;
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& h : kept) {
      if (divides(h, g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Numerator of the quotient ring K[x]/<gens> over prod(1 - Z^{d_i}):
// K(G + g) = K(G) - Z^{deg g} K(G : g).
IntPoly quotient_numerator(const std::vector<Mono>& gens, const std::vector<std::size_t>& degrees) {
  if (gens.empty()) return IntPoly::constant(1);
  const Mono& g = gens.back();
  std::vector<Mono> rest(gens.begin(), gens.end() - 1);
  std::vector<Mono> colon;
  for (const auto& h : rest) {
    Mono q(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) q[i] = h[i] > g[i] ? h[i] - g[i] : 0;
    colon.push_back(std::move(q));
  }
  std::size_t w = 0;
  for (std::size_t i = 0; i < g.size(); ++i) w += g[i] * degrees[i];
  return quotient_numerator(rest, degrees) -
         IntPoly::monomial(w) * quotient_numerator(minimalize(std::move(colon), degrees), degrees);
}

}  // namespace

WeightedMonomialIdeal::WeightedMonomialIdeal(std::vector<std::size_t> degrees,
                                             std::vector<std::vector<std::uint32_t>> generators)
    : degrees_(std::move(degrees)) {
  for (auto d : degrees_) {
    if (d == 0) throw InputError("variable degrees must be positive");
  }
  for (const auto& g : generators) {
    if (g.size() != degrees_.size()) throw InputError("generator has the wrong number of exponents");
  }
  generators_ = minimalize(std::move(generators), degrees_);
}

std::size_t WeightedMonomialIdeal::weight(const std::vector<std::uint32_t>& monomial) const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < monomial.size(); ++i) w += monomial[i] * degrees_.at(i);
  return w;
}

bool WeightedMonomialIdeal::contains(const std::vector<std::uint32_t>& monomial) const {
  for (const auto& g : generators_) {
    if (divides(g, monomial)) return true;
  }
  return false;
}

IdealHilbert ideal_hilbert(const WeightedMonomialIdeal& I, std::size_t D) {
  HilbertForm form;
  form.denominator = I.degrees();
  std::sort(form.denominator.begin(), form.denominator.end());
  if (!I.is_zero()) form.numerator = IntPoly::constant(1) - quotient_numerator(I.generators(), I.degrees());
  return {form, form.expand(D)};
}

std::vector<Layer> layers(const Composition& m) {
  std::set<std::uint32_t, std::greater<>> values;
  for (auto c : m.counts()) {
    if (c > 0) values.insert(c);
  }
  if (values.empty()) throw InputError("the zero monomial has no layers");
  std::vector<Layer> out;
  std::vector<std::uint32_t> v(values.begin(), values.end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Layer l;
    for (std::size_t i = 0; i < m.blocks(); ++i) {
      if (m[i] >= v[j]) l.support.push_back(i);
    }
    l.exponent = v[j] - (j + 1 < v.size() ? v[j + 1] : 0);
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<std::vector<std::size_t>> chain_support(const Composition& m) {
  std::vector<std::vector<std::size_t>> out;
  bool zero = true;
  for (auto c : m.counts()) zero = zero && c == 0;
  if (zero) return out;
  for (auto& l : layers(m)) out.push_back(std::move(l.support));
  return out;
}

Composition leading_monomial(TypeRegistry& reg, const IsoType& type) {
  auto id = reg.find(type);
  if (!id) throw InputError("type " + type.hex() + " is not realized by the template");
  return reg.info(*id).leading;
}

AddLayerReport check_addlayer(TypeRegistry& reg, std::size_t D) {
  AddLayerReport report;
  report.degree = D;
  reg.build(D);
  const auto& blocks = reg.block_template().blocks();
  for (std::size_t n = 1; n <= D; ++n) {
    for (const auto& info : reg.types(n)) {
      const Composition& m = info.leading;
      for (const auto& layer : layers(m)) {
        if (n + layer.support.size() > D) continue;
        bool saturated = false;
        for (auto i : layer.support) saturated = saturated || (!blocks[i].infinite() && m[i] >= blocks[i].capacity);
        if (saturated) {
          ++report.exempt;
          continue;
        }
        Composition grown = m;
        for (auto i : layer.support) ++grown[i];
        ++report.checked;
        if (reg.info(reg.id_of(grown)).leading != grown) report.violations.push_back({m, layer.support});
      }
    }
  }
  return report;
}

namespace {

// Vectors r in N^l with sum r_j w_j <= B, in lexicographic order.
template <typename Visit>
void for_each_weighted(const std::vector<std::size_t>& w, std::size_t B, Visit&& visit) {
  Mono r(w.size(), 0);
  auto rec = [&](auto&& self, std::size_t j, std::size_t budget) -> void {
    if (j == w.size()) {
      visit(r);
      return;
    }
    for (std::uint32_t e = 0; e * w[j] <= budget; ++e) {
      r[j] = e;
      self(self, j + 1, budget - e * w[j]);
    }
    r[j] = 0;
  };
  rec(rec, 0, B);
}

}  // namespace

LeadingHilbert hilbert_via_leading(TypeRegistry& reg, std::size_t D, std::size_t B) {
  if (B == 0) throw InputError("generator bound must be positive");
  const std::size_t top = std::max(D, B);
  reg.build(top);
  const auto& blocks = reg.block_template().blocks();
  std::unordered_set<Composition, CompositionHash> leading;
  std::set<std::vector<std::vector<std::size_t>>> chains;
  for (std::size_t n = 0; n <= B; ++n) {
    for (const auto& info : reg.types(n)) {
      leading.insert(info.leading);
      chains.insert(chain_support(info.leading));
    }
  }
  LeadingHilbert out;
  out.generator_bound = B;
  RationalForm total{IntPoly{}, {}};
  for (const auto& chain : chains) {
    if (chain.empty()) {
      total = total + RationalForm{IntPoly::constant(1), {}};
      continue;
    }
    std::vector<std::size_t> w;
    for (const auto& s : chain) w.push_back(s.size());
    std::map<Mono, std::pair<bool, bool>> member;  // r -> (in J, in I)
    for_each_weighted(w, B, [&](const Mono& r) {
      std::vector<std::uint32_t> d(blocks.size(), 0);
      for (std::size_t j = 0; j < chain.size(); ++j) {
        for (auto i : chain[j]) d[i] += r[j];
      }
      bool over = false;
      for (std::size_t i = 0; i < blocks.size(); ++i) over = over || (!blocks[i].infinite() && d[i] > blocks[i].capacity);
      const bool positive = std::all_of(r.begin(), r.end(), [](std::uint32_t e) { return e > 0; });
      const bool in_j = over || (positive && leading.count(Composition(d)) > 0);
      member.emplace(r, std::make_pair(in_j, over));
    });
    std::vector<Mono> gj, gi;
    for (const auto& [r, in] : member) {
      auto minimal = [&](bool which) {
        for (std::size_t j = 0; j < r.size(); ++j) {
          if (r[j] == 0) continue;
          Mono s = r;
          --s[j];
          const auto& m = member.at(s);
          if (which ? m.second : m.first) return false;
        }
        return true;
      };
      if (in.first && minimal(false)) gj.push_back(r);
      if (in.second && minimal(true)) gi.push_back(r);
    }
    ChainContribution c{chain, WeightedMonomialIdeal(w, gj), WeightedMonomialIdeal(w, gi)};
    const std::size_t window = *std::max_element(w.begin(), w.end());
    for (const auto* ideal : {&c.J, &c.I}) {
      for (const auto& g : ideal->generators()) {
        if (ideal->weight(g) + window > B) {
          throw UndeterminedError("a minimal generator of weight " + std::to_string(ideal->weight(g)) +
                                  " is too close to the generator bound " + std::to_string(B) +
                                  "; rerun with a larger bound");
        }
      }
    }
    total = total + RationalForm::from(ideal_hilbert(c.J, 0).form) - RationalForm::from(ideal_hilbert(c.I, 0).form);
    out.chains.push_back(std::move(c));
  }
  out.form = canonical_form(total);
  const auto direct = profile_series(reg, D).series;
  if (out.form.expand(D) != direct) {
    throw ConsistencyError("leading-monomial Hilbert series " + out.form.str() + " does not reproduce the profile");
  }
  return out;
}

HilbertForm fit_rational(const IntSeries& series, std::size_t k, std::size_t guard) {
  if (series.length() < guard + 1) {
    throw InputError("series of length " + std::to_string(series.length()) + " is shorter than the guard window");
  }
  IntPoly den = IntPoly::constant(1);
  std::vector<std::size_t> degs;
  for (std::size_t i = 1; i <= k; ++i) {
    den *= IntPoly::one_minus_power(i);
    degs.push_back(i);
  }
  const IntSeries product = series.times(den);
  const auto& p = product.coefficients();
  const std::size_t D = series.order();
  long last = -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) last = static_cast<long>(i);
  }
  const std::size_t zeros = D - static_cast<std::size_t>(last + 1) + 1;
  if (last >= 0 && zeros < guard) {
    throw FitError("series is not rational with denominator prod_{i<=" + std::to_string(k) + "}(1 - Z^i) through degree " +
                   std::to_string(D) + " (only " + std::to_string(zeros) + " trailing zero coefficients, guard " +
                   std::to_string(guard) + ")");
  }
  std::vector<BigInt> num(p.begin(), p.begin() + (last + 1));
  return canonical_form(HilbertForm{IntPoly(std::move(num)), degs});
}

Rational QuasiPolynomial::operator()(std::size_t n) const {
  const auto& c = residues.at(n % period);
  Rational v = 0, x = 1;
  for (const auto& a : c) {
    v += a * x;
    x *= n;
  }
  return v;
}

long QuasiPolynomial::degree() const {
  long d = -1;
  for (const auto& r : residues) d = std::max(d, static_cast<long>(r.size()) - 1);
  return d;
}

std::optional<Rational> QuasiPolynomial::leading_coefficient() const {
  const long d = degree();
  if (d < 0) return Rational(0);
  std::optional<Rational> a;
  for (const auto& r : residues) {
    const Rational c = static_cast<long>(r.size()) > d ? r[d] : Rational(0);
    if (a && *a != c) return std::nullopt;
    a = c;
  }
  return a;
}

namespace {

// Coefficients (ascending) of the polynomial of degree < xs.size() through the points.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t m = xs.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < m; ++j) {
      a[i][j] = p;
      p *= xs[i];
    }
    a[i][m] = ys[i];
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> coeffs(m);
  for (std::size_t i = 0; i < m; ++i) coeffs[i] = a[i][m] / a[i][i];
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

}  // namespace

QuasiPolynomial quasi_polynomial(const HilbertForm& h) {
  QuasiPolynomial q;
  std::size_t sum = 0;
  for (auto n : h.denominator) {
    q.period = static_cast<std::size_t>(lcm_u64(q.period, n));
    sum += n;
  }
  const long dp = h.numerator.degree();
  q.n_min = dp >= static_cast<long>(sum) ? static_cast<std::size_t>(dp) - sum + 1 : 0;
  const std::size_t points = std::max<std::size_t>(1, h.denominator.size());
  // Interpolate on `points` values per residue, then confirm on as many more.
  const std::size_t order = q.n_min + q.period * (2 * points + 1);
  const IntSeries s = h.expand(order);
  for (std::size_t r = 0; r < q.period; ++r) {
    std::size_t n = q.n_min;
    while (n % q.period != r) ++n;
    std::vector<Rational> xs, ys;
    for (std::size_t j = 0; j < points; ++j, n += q.period) {
      xs.emplace_back(n);
      ys.emplace_back(s[n]);
    }
    q.residues.push_back(interpolate(xs, ys));
    for (std::size_t j = 0; j < points; ++j, n += q.period) {
      if (q(n) != Rational(s[n])) {
        throw ConsistencyError("quasi-polynomial does not extend to n = " + std::to_string(n));
      }
    }
  }
  return q;
}

}  // namespace agealg
