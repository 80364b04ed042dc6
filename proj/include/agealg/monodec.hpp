#pragma once

// Monomorphic parts and minimal monomorphic decompositions, for finite
// structures (exhaustive subset tests) and for templates (block coarsenings
// of fat instantiations), plus the partition lower bound on the profile.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agealg/block_template.hpp"
#include "agealg/numeric.hpp"

namespace agealg {

/// Set partition of {0..n-1}: disjoint, covering, no empty block. Blocks are
/// sorted internally and ordered by their smallest element.
class Partition {
 public:
  Partition() = default;
  /// Throws InputError unless `blocks` is a partition of {0..n-1}.
  Partition(std::vector<std::vector<Element>> blocks, std::size_t n);

  const std::vector<std::vector<Element>>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  /// True iff every block of this partition lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::vector<Element>> blocks_;
  std::size_t n_ = 0;
};

/// Structures above this size are rejected by the exhaustive finite tests.
inline constexpr std::size_t kMaxExhaustiveSize = 24;

/// True iff restrict(S, A) and restrict(S, A') are isomorphic whenever |A| = |A'| and A\F = A'\F.
bool is_monomorphic_part(const FiniteRelStruct& S, std::span<const Element> F);

/// True iff restrict(S, B+a) and restrict(S, B+b) are isomorphic for every B avoiding a and b.
/// InputError if a == b or either is out of range.
bool pair_mergeable(const FiniteRelStruct& S, Element a, Element b);

/// Classes of pair_mergeable. ConsistencyError if the relation is not transitive.
Partition minimal_decomposition(const FiniteRelStruct& S);

/// Every block at min(capacity, d) elements.
Composition fat_level(const BlockTemplate& t, std::size_t d);

/// Template blocks x, y are mergeable in instantiate(t, level) iff their
/// elements are pair_mergeable there; decided from compositions alone.
bool blocks_mergeable(CompositionTyper& typer, const Composition& level, std::size_t x, std::size_t y);

/// Classes of template blocks (sorted lists of block indices) induced by the
/// minimal decomposition of instantiate(t, level). ConsistencyError on non-transitivity.
std::vector<std::vector<std::size_t>> block_coarsening(CompositionTyper& typer, const Composition& level);

inline constexpr std::size_t kDefaultFatnessBound = 6;

struct FatnessResult {
  /// Smallest level d <= d_max whose coarsening equals that of level d+1; empty when undetermined.
  std::optional<std::size_t> d;
  std::size_t d_max = kDefaultFatnessBound;
  /// coarsenings[i] is the coarsening at level i+1.
  std::vector<std::vector<std::vector<std::size_t>>> coarsenings;
  std::vector<std::string> diagnostics;
};

FatnessResult fatness_threshold(const BlockTemplate& t, std::size_t d_max = kDefaultFatnessBound);

struct Components {
  /// Block indices of each component, ordered by smallest block index.
  std::vector<std::vector<std::size_t>> classes;
  /// Number of elements of each component (kInfinite when it contains an infinite block).
  std::vector<std::size_t> sizes;
  /// Monomorphic dimension: number of infinite components.
  std::size_t k = 0;
  /// Fatness threshold used.
  std::size_t d = 0;
  std::size_t d_max = kDefaultFatnessBound;
  /// Growth offset n0 = k1*d + m (k1: components with at least d elements, m: sizes of the others).
  std::size_t n0 = 0;
};

/// UndeterminedError when the fatness threshold does not stabilize by d_max.
Components template_components(const BlockTemplate& t, std::size_t d_max = kDefaultFatnessBound);

/// wp_k(n - n0): partitions of n - n0 into at most k parts, 0 when n < n0. InputError if k == 0.
BigInt partition_lower_bound(std::size_t k, std::size_t n, std::size_t n0);

/// For all A, A' of equal size m <= D avoiding F: restrict(S, A+F) and
/// restrict(S, A'+F) are isomorphic by a map fixing F pointwise.
bool is_F_monomorphic_up_to(const FiniteRelStruct& S, std::span<const Element> F, std::size_t D);

/// Template version; F lists positions inside block chains (each below the block capacity).
bool is_F_monomorphic_up_to(const BlockTemplate& t, const std::vector<BlockElement>& F, std::size_t D);

}  // namespace agealg
