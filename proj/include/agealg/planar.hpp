#pragma once

// Reduced plane trees and the leaf structure of the infinite plane tree T.
//
// T is never materialized. A leaf of T is addressed by the child indices on
// the path from the root: at every internal node, odd indices are leaves and
// even indices are copies of T, so an address is a run of even indices ended
// by one odd index. Lexicographic order of addresses is the infix order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agealg/numeric.hpp"
#include "agealg/relcore.hpp"

namespace agealg {

/// Rooted ordered tree: empty, a leaf, or an internal node with children.
/// Reduced when every internal node has at least two children.
class PlaneTree {
 public:
  static PlaneTree empty();
  static PlaneTree leaf();
  /// InputError if children is empty or contains the empty tree.
  static PlaneTree node(std::vector<PlaneTree> children);
  /// Parenthesis notation: "o" for a leaf, "(o,(o,o))", "()" for the empty tree.
  static PlaneTree parse(std::string_view text);

  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_leaf() const { return kind_ == Kind::Leaf; }
  const std::vector<PlaneTree>& children() const { return children_; }
  std::size_t leaves() const;
  std::size_t height() const;
  bool is_reduced() const;
  std::string str() const;

  bool operator==(const PlaneTree& o) const { return str() == o.str(); }
  bool operator<(const PlaneTree& o) const { return str() < o.str(); }

 private:
  enum class Kind { Empty, Leaf, Node };
  Kind kind_ = Kind::Empty;
  std::vector<PlaneTree> children_;
};

using LeafAddress = std::vector<std::uint32_t>;

/// Contracts every unary internal node.
PlaneTree reduce(const PlaneTree& t);

/// InputError unless the address ends with an odd index after even ones, all >= 1.
void check_address(const LeafAddress& a);

/// Reduced tree spanned by the root of T and the leaves in A. InputError on
/// malformed or duplicate addresses.
PlaneTree contract(std::vector<LeafAddress> A);

/// Leaf addresses, in infix order, with contract(embed(t)) = reduce(t). Each
/// child takes the smallest free index of the right parity.
std::vector<LeafAddress> embed(const PlaneTree& t);

/// Contraction of a finite tree on a set of its leaves (0-based infix positions).
PlaneTree contract_leaves(const PlaneTree& t, const std::vector<std::size_t>& leaves);

using TripleMap = std::map<std::array<std::size_t, 3>, PlaneTree>;

/// The 3-leaf contractions of a tree, keyed by sorted 0-based leaf positions.
TripleMap triples_of(const PlaneTree& t);

/// Rebuilds the reduced tree with d leaves from its 3-leaf contractions using
/// node intervals; nullopt when no tree has these contractions. InputError if
/// d < 3 or the map is not total on 3-subsets.
std::optional<PlaneTree> reconstruct_from_triples(std::size_t d, const TripleMap& triples);

/// All reduced trees with n leaves, without duplicates.
std::vector<PlaneTree> enumerate_reduced(std::size_t n);

/// Union of the embeddings of all reduced trees with n leaves and height <= depth_budget.
std::vector<LeafAddress> embedding_sample(std::size_t n, std::size_t depth_budget);

/// All leaves of T with at most depth_budget indices, each index <= max_index.
std::vector<LeafAddress> truncated_sample(std::size_t depth_budget, std::uint32_t max_index);

struct PlanarProfile {
  std::size_t n = 0;
  std::size_t count = 0;     // distinct contractions of n-subsets of the sample
  std::size_t expected = 0;  // number of reduced trees with n leaves
  std::size_t sample_size = 0;
  std::string diagnostic;    // set when the sample undercounts
};

PlanarProfile planar_profile(std::size_t n, const std::vector<LeafAddress>& sample);
/// Default sample: embedding_sample(n, depth_budget), depth_budget defaulting to max(n-1, 1).
PlanarProfile planar_profile(std::size_t n, std::optional<std::size_t> depth_budget = std::nullopt);

/// Leaves of the sample (sorted into infix order) with the order "lt" and, for
/// each 3-leaf tree, a ternary relation on increasing triples contracting to it:
/// "rho_right" (o,(o,o)), "rho_flat" (o,o,o), "rho_left" ((o,o),o).
FiniteRelStruct leaf_structure(std::vector<LeafAddress> sample);

/// Splits A = A1 + A2 of one realization A of tau with contractions tau1, tau2.
/// InputError when the leaf counts do not add up.
BigInt shuffle_constant(const PlaneTree& tau1, const PlaneTree& tau2, const PlaneTree& tau);

struct PairWitness {
  LeafAddress a, b, c, d;
};

struct MonopartReport {
  bool ok = true;  // every pair separated
  std::size_t pairs = 0;
  std::size_t extended = 0;  // pairs that needed leaves outside the sample
  std::vector<LeafAddress> sample;  // the sample plus any added witnesses, in infix order
  std::vector<PairWitness> witnesses;
};

/// For every pair a < b of the sample, finds c, d with contract{a,c,d} != contract{b,c,d},
/// so that no 2-element set is a monomorphic part. InputError below 4 leaves.
MonopartReport no_pair_monopart(std::vector<LeafAddress> sample);

}  // namespace agealg
