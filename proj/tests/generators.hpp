#pragma once

// Seeded random structures for property tests.

#include <algorithm>
#include <random>
#include <vector>

#include "agealg/relcore.hpp"

namespace gen {

using agealg::Element;
using agealg::FiniteRelStruct;
using agealg::Signature;
using agealg::Tuple;

inline Signature graph_signature() { return Signature({{"E", 2}}); }
inline Signature mixed_signature() { return Signature({{"E", 2}, {"U", 1}}); }

/// Each ordered pair (i != j) becomes an arc with probability p; symmetric when undirected.
inline FiniteRelStruct random_graph(std::mt19937& rng, std::size_t n, double p, bool undirected) {
  std::bernoulli_distribution coin(p);
  std::vector<Tuple> arcs;
  for (Element i = 0; i < n; ++i) {
    for (Element j = undirected ? i + 1 : 0; j < n; ++j) {
      if (i == j || !coin(rng)) continue;
      arcs.push_back({i, j});
      if (undirected) arcs.push_back({j, i});
    }
  }
  return FiniteRelStruct(graph_signature(), n, {arcs});
}

/// Random digraph plus a random unary predicate, loops allowed.
inline FiniteRelStruct random_mixed(std::mt19937& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.35);
  std::vector<Tuple> arcs, marks;
  for (Element i = 0; i < n; ++i) {
    if (coin(rng)) marks.push_back({i});
    for (Element j = 0; j < n; ++j) {
      if (coin(rng)) arcs.push_back({i, j});
    }
  }
  return FiniteRelStruct(mixed_signature(), n, {arcs, marks});
}

inline std::vector<Element> random_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<Element> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Element>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace gen
