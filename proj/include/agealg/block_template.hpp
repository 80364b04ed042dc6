#pragma once

// Finite descriptions of infinite relational structures with a declared finite
// monomorphic decomposition. Each block is an N-ordered chain of given
// capacity; a tuple belongs to a relation iff its pattern (block of each
// coordinate, relative order of coordinates sharing a block) is accepted.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "agealg/relcore.hpp"

namespace agealg {

inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

struct Block {
  std::string name;
  std::size_t capacity = kInfinite;

  bool infinite() const { return capacity == kInfinite; }
  bool operator==(const Block&) const = default;
};

/// Block of each tuple coordinate, plus its rank among the coordinates that
/// share its block (equal ranks: equal elements).
struct TuplePattern {
  std::vector<std::uint32_t> blocks;
  std::vector<std::uint32_t> ranks;

  /// Renumbers ranks per block to the dense initial segment, preserving order.
  TuplePattern normalized() const;
  std::size_t arity() const { return blocks.size(); }

  bool operator==(const TuplePattern&) const = default;
  auto operator<=>(const TuplePattern&) const = default;
};

/// Exponent vector over the blocks of a template; doubles as the monomial
/// prod x^{d_x} and as an instantiation request.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {}

  const std::vector<std::uint32_t>& counts() const { return counts_; }
  std::size_t blocks() const { return counts_.size(); }
  std::uint32_t operator[](std::size_t i) const { return counts_[i]; }
  std::uint32_t& operator[](std::size_t i) { return counts_[i]; }
  std::size_t degree() const;
  /// Counts sorted in decreasing order.
  std::vector<std::uint32_t> shape() const;
  bool fits_in(const Composition& other) const;
  std::string str() const;

  bool operator==(const Composition&) const = default;
  auto operator<=>(const Composition&) const = default;

 private:
  std::vector<std::uint32_t> counts_;
};

struct CompositionHash {
  std::size_t operator()(const Composition& c) const noexcept;
};

/// Element of a (possibly infinite) template structure: position in a block chain.
struct BlockElement {
  std::size_t block = 0;
  std::size_t index = 0;

  bool operator==(const BlockElement&) const = default;
  auto operator<=>(const BlockElement&) const = default;
};

class BlockTemplate {
 public:
  BlockTemplate() = default;
  /// `accepted[s]` lists accepted patterns for symbol s; they are normalized and deduplicated.
  BlockTemplate(Signature signature, std::vector<Block> blocks, std::vector<std::vector<TuplePattern>> accepted);

  const Signature& signature() const { return signature_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<TuplePattern>& accepted(std::size_t symbol) const { return accepted_.at(symbol); }
  const std::vector<std::vector<TuplePattern>>& accepted() const { return accepted_; }
  std::size_t infinite_block_count() const;

  bool operator==(const BlockTemplate&) const = default;

 private:
  Signature signature_;
  std::vector<Block> blocks_;
  std::vector<std::vector<TuplePattern>> accepted_;
};

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Structural checks only (arities, block indices, ranks vs capacities).
Diagnostics validate_structure(const BlockTemplate& t);

/// Structural checks plus an exhaustive check, on every instantiation of total
/// degree <= max_degree, that subsets with equal block counts are isomorphic.
Diagnostics validate(const BlockTemplate& t, std::size_t max_degree = 5);

/// Throws InputError listing the diagnostics when validation fails.
void require_valid(const BlockTemplate& t);

/// Disjoint union of chains of sizes d_x, in block order. Throws InputError on
/// capacity violation or block-count mismatch.
FiniteRelStruct instantiate(const BlockTemplate& t, const Composition& d);

/// Offset of the first element of each block in instantiate(t, d).
std::vector<std::size_t> block_offsets(const Composition& d);

/// Composition d(A) of a subset of instantiate(t, d).
Composition composition_of(const Composition& d, std::span<const Element> subset);

/// Every capacity-respecting composition of the given degree, in lexicographic
/// order of exponent vectors (largest first block count first).
std::vector<Composition> compositions_of_degree(const BlockTemplate& t, std::size_t degree);

/// Sub-compositions c <= d (componentwise), in lexicographic order.
std::vector<Composition> sub_compositions(const Composition& d);

/// Memoized isomorphism type of instantiate(t, d). Any subset of any
/// instantiation with block counts c has the type of c. Thread-safe.
class CompositionTyper {
 public:
  explicit CompositionTyper(BlockTemplate t) : template_(std::move(t)) {}

  const BlockTemplate& block_template() const { return template_; }
  const IsoType& type_of(const Composition& d);
  std::size_t cached() const;

 private:
  BlockTemplate template_;
  mutable std::mutex mutex_;
  std::unordered_map<Composition, IsoType, CompositionHash> cache_;
};

}  // namespace agealg
