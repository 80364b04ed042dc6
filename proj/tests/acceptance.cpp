// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "agealg/ageprofile.hpp"
#include "agealg/gallery.hpp"
#include "agealg/hilbert.hpp"
#include "agealg/monodec.hpp"
#include "agealg/planar.hpp"
#include "oracles.hpp"

using namespace agealg;

namespace {

constexpr std::size_t kDegree = 14;
constexpr std::size_t kGuard = 5;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string line;
  bool ok = false;
  try {
    line = body();
    ok = true;
  } catch (const Failure& f) {
    line = f.what;
  } catch (const std::exception& e) {
    line = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << line << " (" << secs << " s)"
            << std::endl;
}

HilbertForm form(std::vector<long> num, std::vector<std::size_t> den) {
  std::vector<BigInt> c(num.begin(), num.end());
  return HilbertForm{IntPoly(c), den};
}

// Results shared by several criteria, computed once per gallery template.
struct GalleryRun {
  std::string name;
  BlockTemplate t;
  std::unique_ptr<TypeRegistry> reg;
  IntSeries series;
  Components comps;
  HilbertForm fitted;
};

std::vector<GalleryRun>& gallery_runs() {
  static std::vector<GalleryRun> runs = [] {
    std::vector<GalleryRun> out;
    for (const auto& name : verification_gallery()) {
      GalleryRun r{name, builtin_template(name), nullptr, {}, {}, {}};
      r.reg = std::make_unique<TypeRegistry>(r.t);
      r.series = profile_series(*r.reg, kDegree).series;
      r.comps = template_components(r.t);
      r.fitted = fit_rational(r.series, r.comps.k, kGuard);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

BlockTemplate random_template(std::mt19937& rng) {
  const std::size_t nb = 2 + rng() % 2;
  std::vector<Block> blocks;
  for (std::size_t x = 0; x < nb; ++x) blocks.push_back({"b" + std::to_string(x), kInfinite});
  std::vector<TuplePattern> edges, marks;
  for (std::uint32_t x = 0; x < nb; ++x) {
    if (rng() % 3 == 0) marks.push_back({{x}, {0}});
    for (std::uint32_t y = 0; y < nb; ++y) {
      if (x == y) {
        if (rng() % 2) edges.push_back({{x, x}, {0, 1}});
        if (rng() % 3 == 0) edges.push_back({{x, x}, {1, 0}});
      } else if (rng() % 2) {
        edges.push_back({{x, y}, {0, 0}});
      }
    }
  }
  return BlockTemplate(Signature({{"E", 2}, {"U", 1}}), blocks, {edges, marks});
}

}  // namespace

int main() {
  std::cout << "acceptance: D = " << kDegree << ", guard = " << kGuard << ", d_max = " << kDefaultFatnessBound << '\n';

  criterion(1, "gallery Hilbert series, exact normalized forms", [] {
    const HilbertForm cpc = form({1, 0, 0, 1}, {1, 2});
    std::vector<std::pair<std::string, HilbertForm>> expected = {
        {"coclique", form({1}, {1})},
        {"clique_plus_coclique", cpc},
        {"wheel_plus_coclique", cpc},
        {"qsym:2", cpc},
        {"groupoid", form({1, -1, 2, -1}, {1, 1, 1})},
    };
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<std::size_t> den;
      for (std::size_t i = 1; i <= k; ++i) den.push_back(i);
      expected.emplace_back("sym:" + std::to_string(k), form({1}, den));
    }
    for (const auto& [name, want] : expected) {
      const auto t = builtin_template(name);
      TypeRegistry reg(t);
      const auto got = fit_rational(profile_series(reg, kDegree).series, template_components(t).k, kGuard);
      require(got == want, name + ": got " + got.str() + ", expected " + want.str());
    }
    return std::to_string(expected.size()) + " forms equal";
  });

  criterion(2, "two-path agreement (fit vs leading monomials)", [] {
    for (auto& r : gallery_runs()) {
      const auto leading = hilbert_via_leading(*r.reg, kDegree, kDegree);
      require(leading.form == r.fitted, r.name + ": fit " + r.fitted.str() + " vs leading " + leading.form.str());
    }
    return std::to_string(gallery_runs().size()) + " templates agree";
  });

  criterion(3, "Lemma addlayer to degree 10", [] {
    std::size_t monomials = 0;
    for (auto& r : gallery_runs()) {
      const auto a = check_addlayer(*r.reg, 10);
      require(a.ok(), r.name + ": " + std::to_string(a.violations.size()) + " violations");
      monomials += a.checked;
    }
    return "0 violations over " + std::to_string(monomials) + " checks";
  });

  criterion(4, "components and k; exhaustive pair_mergeable at fat levels <= 4", [] {
    const std::map<std::string, std::pair<std::size_t, std::size_t>> published = {
        {"coclique", {1, 1}},        {"clique", {1, 1}},        {"sym:1", {1, 1}},
        {"sym:2", {2, 2}},           {"sym:3", {3, 3}},         {"sym:4", {4, 4}},
        {"clique_sum:2", {2, 2}},    {"clique_plus_coclique", {2, 2}},
        {"wheel_plus_coclique", {3, 2}}, {"qsym:2", {2, 2}},   {"qsym:3", {3, 3}},
        {"rqsym:2:2", {2, 2}},       {"groupoid", {3, 3}},     {"c3_chains", {3, 3}},
    };
    std::size_t pairs = 0;
    for (auto& r : gallery_runs()) {
      const auto want = published.at(r.name);
      require(r.comps.classes.size() == want.first && r.comps.k == want.second,
              r.name + ": " + std::to_string(r.comps.classes.size()) + " components, k = " + std::to_string(r.comps.k));
      require(r.comps.d <= 4, r.name + ": fatness " + std::to_string(r.comps.d) + " above 4");
      std::vector<std::size_t> component_of(r.t.block_count());
      for (std::size_t c = 0; c < r.comps.classes.size(); ++c) {
        for (auto x : r.comps.classes[c]) component_of[x] = c;
      }
      const std::size_t top = 4;
      for (std::size_t level = r.comps.d; level <= top; ++level) {
        const auto L = fat_level(r.t, level);
        const auto s = instantiate(r.t, L);
        const auto offsets = block_offsets(L);
        std::vector<std::size_t> block_of(s.size());
        for (std::size_t x = 0; x < L.blocks(); ++x) {
          for (std::size_t e = offsets[x]; e < offsets[x + 1]; ++e) block_of[e] = x;
        }
        for (Element a = 0; a < s.size(); ++a) {
          for (Element b = a + 1; b < s.size(); ++b) {
            const bool same = component_of[block_of[a]] == component_of[block_of[b]];
            require(pair_mergeable(s, a, b) == same, r.name + ": pair (" + std::to_string(a) + "," +
                                                         std::to_string(b) + ") at level " + std::to_string(level));
            ++pairs;
          }
        }
      }
    }
    return "all counts match; " + std::to_string(pairs) + " element pairs agree with the components";
  });

  criterion(5, "growth bounds, quasi-polynomial degree k-1, constant leading coefficient", [] {
    for (auto& r : gallery_runs()) {
      for (std::size_t n = 0; n <= kDegree; ++n) {
        const BigInt phi = r.series[n];
        require(partition_lower_bound(r.comps.k, n, r.comps.n0) <= phi, r.name + ": lower bound at n=" + std::to_string(n));
        require(phi <= r.reg->composition_count(n), r.name + ": upper bound at n=" + std::to_string(n));
      }
      const auto q = quasi_polynomial(r.fitted);
      require(q.degree() == static_cast<long>(r.comps.k) - 1, r.name + ": degree " + std::to_string(q.degree()));
      require(q.leading_coefficient().has_value(), r.name + ": leading coefficient varies");
      for (std::size_t n = q.n_min; n <= kDegree; ++n) {
        require(q(n) == Rational(r.series[n]), r.name + ": value at n=" + std::to_string(n));
      }
    }
    return "bounds hold for n <= 14 on all templates";
  });

  criterion(6, "multiplication by e is injective (rank = phi(n), n <= 8)", [] {
    for (auto& r : gallery_runs()) {
      for (std::size_t n = 0; n <= 8; ++n) {
        const auto rank = mult_by_e_rank(*r.reg, n);
        require(rank == r.reg->types(n).size(), r.name + ": rank " + std::to_string(rank) + " at n=" + std::to_string(n));
      }
    }
    return "full rank everywhere";
  });

  criterion(7, "planar: Schroeder counts, sample profiles, triples, no monomorphic pair", [] {
    const std::vector<std::size_t> schroder = {1, 1, 1, 3, 11, 45, 197, 903};
    for (std::size_t n = 0; n < schroder.size(); ++n) {
      require(enumerate_reduced(n).size() == schroder[n], "enumeration at n=" + std::to_string(n));
    }
    for (std::size_t n = 0; n <= 5; ++n) {
      require(planar_profile(n).count == schroder[n], "sample profile at n=" + std::to_string(n));
    }
    std::size_t trees = 0;
    for (std::size_t n = 3; n <= 6; ++n) {
      for (const auto& t : enumerate_reduced(n)) {
        const auto back = reconstruct_from_triples(n, triples_of(t));
        require(back && *back == t, "triples of " + t.str());
        ++trees;
      }
    }
    std::size_t samples = 1;
    require(no_pair_monopart(embedding_sample(6, 5)).ok, "default 6-leaf sample");
    for (const auto& t : enumerate_reduced(6)) {
      require(no_pair_monopart(embed(t)).ok, "embedding of " + t.str());
      ++samples;
    }
    return std::to_string(trees) + " trees rebuilt, " + std::to_string(samples) + " samples without monomorphic pairs";
  });

  criterion(8, "monomial ideal series vs brute-force divisibility (50 ideals, D = 12)", [] {
    std::mt19937 rng(2024);
    for (int round = 0; round < 50; ++round) {
      const std::size_t vars = 1 + rng() % 4, gens = 1 + rng() % 5;
      std::vector<std::size_t> degrees(vars);
      for (auto& d : degrees) d = 1 + rng() % 3;
      std::vector<std::vector<std::uint32_t>> g(gens, std::vector<std::uint32_t>(vars));
      for (auto& m : g)
        for (auto& e : m) e = rng() % 4;
      const auto h = ideal_hilbert(WeightedMonomialIdeal(degrees, g), 12);
      const auto expected = oracle::ideal_counts(degrees, g, 12);
      require(h.series.coefficients() == expected, "ideal " + std::to_string(round) + " series");
      require(h.form.expand(12).coefficients() == expected, "ideal " + std::to_string(round) + " form");
    }
    return "50 ideals exact";
  });

  criterion(9, "claims beyond desk scale, replaced by checks", [] {
    // Quasi-polynomiality of the profile, beyond the gallery: random small templates.
    std::mt19937 rng(9);
    std::size_t checked = 0;
    for (int round = 0; round < 20; ++round) {
      const auto t = random_template(rng);
      TypeRegistry reg(t);
      const auto series = profile_series(reg, kDegree).series;
      const auto comps = template_components(t);
      const auto fitted = fit_rational(series, comps.k, kGuard);
      const auto leading = hilbert_via_leading(reg, kDegree, kDegree);
      require(leading.form == fitted, "random template " + std::to_string(round) + ": two paths differ");
      const auto q = quasi_polynomial(fitted);
      require(q.degree() == static_cast<long>(comps.k) - 1, "random template " + std::to_string(round) + ": degree");
      for (std::size_t n = q.n_min; n <= kDegree; ++n) {
        require(q(n) == Rational(series[n]), "random template " + std::to_string(round) + ": value");
      }
      ++checked;
    }
    std::ostringstream os;
    os << "quasi-polynomial theorem checked on the gallery and " << checked
       << " random templates; hereditary-class theorem out of scope; Cohen-Macaulayness reported, not decided";
    return os.str();
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
