#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "agealg/error.hpp"
#include "agealg/relcore.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace agealg;

namespace {

FiniteRelStruct graph(std::size_t n, std::vector<std::pair<Element, Element>> edges) {
  std::vector<Tuple> arcs;
  for (auto [a, b] : edges) {
    arcs.push_back({a, b});
    arcs.push_back({b, a});
  }
  return FiniteRelStruct(gen::graph_signature(), n, {arcs});
}

bool is_isomorphism(const FiniteRelStruct& a, const FiniteRelStruct& b, const std::vector<Element>& f) {
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    if (a.tuple_count(r) != b.tuple_count(r)) return false;
    for (const auto& t : a.tuples(r)) {
      Tuple u;
      for (auto e : t) u.push_back(f[e]);
      if (!b.contains(r, u)) return false;
    }
  }
  std::set<Element> image(f.begin(), f.end());
  return image.size() == a.size();
}

}  // namespace

TEST_CASE("restrict keeps exactly the tuples inside the subset") {
  const auto k3 = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<Element> all{0, 1, 2};
  CHECK(restrict(k3, all) == k3);
  const std::vector<Element> pair{0, 1};
  CHECK(restrict(k3, pair) == graph(2, {{0, 1}}));

  const auto path = graph(3, {{0, 1}, {1, 2}});
  const std::vector<Element> ends{0, 2};
  CHECK(restrict(path, ends) == graph(2, {}));
}

TEST_CASE("restrict rejects repeated and out-of-range elements") {
  const auto k3 = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<Element> repeated{0, 0};
  const std::vector<Element> outside{0, 3};
  CHECK_THROWS_AS(restrict(k3, repeated), InputError);
  CHECK_THROWS_AS(restrict(k3, outside), InputError);
}

TEST_CASE("restrict keeps tuples with repeated entries") {
  FiniteRelStruct s(Signature({{"R", 3}}), 3, {{{0, 0, 1}, {1, 2, 2}}});
  const std::vector<Element> sub{0, 1};
  const auto r = restrict(s, sub);
  CHECK(r.tuple_count(0) == 1);
  const Tuple loop{0, 0, 1};
  CHECK(r.contains(0, loop));
}

TEST_CASE("find_isomorphism on small graphs") {
  const auto k2 = graph(2, {{0, 1}});
  const auto e2 = graph(2, {});
  const auto id = find_isomorphism(k2, k2);
  REQUIRE(id);
  CHECK(is_isomorphism(k2, k2, *id));
  CHECK_FALSE(find_isomorphism(k2, e2));

  // a-b-c against c-b-a with labels a=0, b=1, c=2 and c=0, b=1, a=2
  FiniteRelStruct p1(Signature({{"E", 2}}), 3, {{{0, 1}, {1, 2}}});
  FiniteRelStruct p2(Signature({{"E", 2}}), 3, {{{2, 1}, {1, 0}}});
  const auto w = find_isomorphism(p1, p2);
  REQUIRE(w);
  CHECK(is_isomorphism(p1, p2, *w));
}

TEST_CASE("find_isomorphism rejects a signature mismatch") {
  FiniteRelStruct a(Signature({{"E", 2}}), 2);
  FiniteRelStruct b(Signature({{"F", 2}}), 2);
  CHECK_THROWS_AS(find_isomorphism(a, b), InputError);
}

TEST_CASE("canonical codes of small graphs") {
  const auto k2 = graph(2, {{0, 1}});
  const std::vector<Element> swap{1, 0};
  CHECK(canonical_code(k2) == canonical_code(relabel(k2, swap)));
  CHECK(canonical_code(k2) != canonical_code(graph(2, {})));
  CHECK(canonical_code(k2).code.substr(0, kCanonicalCodeVersion.size()) == kCanonicalCodeVersion);
  CHECK(canonical_code(k2).degree == 2);
}

TEST_CASE("all labeled graphs on 4 vertices fall into 11 codes") {
  const std::vector<std::pair<Element, Element>> slots{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::set<std::string> codes;
  std::vector<FiniteRelStruct> reps;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<std::pair<Element, Element>> edges;
    for (unsigned i = 0; i < 6; ++i) {
      if (mask >> i & 1) edges.push_back(slots[i]);
    }
    const auto g = graph(4, edges);
    codes.insert(canonical_code(g).code);
    bool seen = false;
    for (const auto& r : reps) seen = seen || oracle::isomorphic(r, g);
    if (!seen) reps.push_back(g);
  }
  CHECK(reps.size() == 11);
  CHECK(codes.size() == 11);
}

TEST_CASE("subset_types of small graphs") {
  const auto k4 = graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto empty_types = subset_types(k4, 0);
  REQUIRE(empty_types.size() == 1);
  CHECK(empty_types.begin()->second == 1);
  const auto edges = subset_types(k4, 2);
  REQUIRE(edges.size() == 1);
  CHECK(edges.begin()->second == 6);

  const auto p5 = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto triples = subset_types(p5, 3);
  std::multiset<std::size_t> counts;
  for (const auto& [type, m] : triples) counts.insert(m);
  CHECK(counts == std::multiset<std::size_t>{1, 3, 6});
  const std::vector<Element> p3{0, 1, 2};
  const std::vector<Element> p2p1{0, 1, 3};
  const std::vector<Element> e3{0, 2, 4};
  CHECK(triples.at(canonical_code(restrict(p5, p3))) == 3);
  CHECK(triples.at(canonical_code(restrict(p5, p2p1))) == 6);
  CHECK(triples.at(canonical_code(restrict(p5, e3))) == 1);
  CHECK_THROWS_AS(subset_types(p5, 6), InputError);
}

TEST_CASE("property: codes agree exactly when the brute-force oracle finds an isomorphism") {
  std::mt19937 rng(20261015);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + round % 6;
    const auto a = gen::random_mixed(rng, n);
    // Half of the partners are relabelings, so both outcomes are exercised.
    const auto b = round % 2 ? relabel(a, gen::random_permutation(rng, n)) : gen::random_mixed(rng, n);
    const bool iso = oracle::isomorphic(a, b);
    CHECK(iso == (canonical_code(a) == canonical_code(b)));
    const auto w = find_isomorphism(a, b);
    CHECK(iso == w.has_value());
    if (w) CHECK(is_isomorphism(a, b, *w));
  }
}

TEST_CASE("property: isomorphism is reflexive, symmetric and transitive") {
  std::mt19937 rng(7);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + round % 6;
    const auto a = gen::random_graph(rng, n, 0.5, round % 3 == 0);
    const auto b = relabel(a, gen::random_permutation(rng, n));
    const auto c = relabel(b, gen::random_permutation(rng, n));
    REQUIRE(find_isomorphism(a, a));
    const auto ab = find_isomorphism(a, b);
    const auto bc = find_isomorphism(b, c);
    REQUIRE(ab);
    REQUIRE(bc);
    std::vector<Element> inverse(n), composed(n);
    for (Element v = 0; v < n; ++v) {
      inverse[(*ab)[v]] = v;
      composed[v] = (*bc)[(*ab)[v]];
    }
    CHECK(is_isomorphism(b, a, inverse));
    CHECK(is_isomorphism(a, c, composed));
  }
}

TEST_CASE("property: canonical labeling sends every relabeling to the same structure") {
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + round % 7;
    const auto a = gen::random_mixed(rng, n);
    const auto b = relabel(a, gen::random_permutation(rng, n));
    const auto la = canonical_labeling(a);
    const auto lb = canonical_labeling(b);
    CHECK(relabel(a, la) == relabel(b, lb));
  }
}

TEST_CASE("property: restriction types are invariant under automorphisms") {
  std::mt19937 rng(3);
  // A 6-cycle has a rich automorphism group; apply rotations and reflections.
  const auto c6 = graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  for (int round = 0; round < 50; ++round) {
    const auto subset_size = 1 + round % 5;
    auto perm = gen::random_permutation(rng, 6);
    std::vector<Element> subset(perm.begin(), perm.begin() + subset_size);
    std::sort(subset.begin(), subset.end());
    const Element shift = static_cast<Element>(round % 6);
    const bool flip = round % 2;
    std::vector<Element> image;
    for (auto v : subset) image.push_back(static_cast<Element>(flip ? (12 - v + shift) % 6 : (v + shift) % 6));
    std::sort(image.begin(), image.end());
    CHECK(canonical_code(restrict(c6, subset)) == canonical_code(restrict(c6, image)));
  }
}

TEST_CASE("property: subset_types matches brute-force classification") {
  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 4 + round % 3;
    const auto s = gen::random_mixed(rng, n);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto types = subset_types(s, k);
      std::size_t total = 0;
      for (const auto& [t, m] : types) total += m;
      CHECK(BigInt(total) == binomial(n, k));
      CHECK(types.size() == oracle::age_level(s, k).size());
    }
  }
}

TEST_CASE("mark_elements pins marked elements") {
  const auto k3 = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<Element> m0{0};
  const std::vector<Element> m1{1};
  // Marking different vertices of K3 gives isomorphic structures (automorphism moves one to the other).
  CHECK(canonical_code(mark_elements(k3, m0)) == canonical_code(mark_elements(k3, m1)));
  const auto path = graph(3, {{0, 1}, {1, 2}});
  CHECK(canonical_code(mark_elements(path, m0)) != canonical_code(mark_elements(path, m1)));
}
