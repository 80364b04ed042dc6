#pragma once

// Finite relational structures: restriction, isomorphism witnesses, canonical
// codes and the classification of induced substructures by isomorphism type.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agealg {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
};

/// Ordered, nonempty list of relation symbols with unique names and arities >= 1.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  int arity(std::size_t symbol) const { return symbols_.at(symbol).arity; }
  const std::string& name(std::size_t symbol) const { return symbols_.at(symbol).name; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// A finite relational structure on the elements 0..size-1.
///
/// Tuples are stored per symbol as one flat, lexicographically sorted array
/// without duplicates. Values are immutable once constructed.
class FiniteRelStruct {
 public:
  FiniteRelStruct() = default;
  FiniteRelStruct(Signature signature, std::size_t size);
  /// `relations[s]` lists the tuples of symbol s; order and duplicates are irrelevant.
  FiniteRelStruct(Signature signature, std::size_t size, const std::vector<std::vector<Tuple>>& relations);

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return size_; }

  std::size_t tuple_count(std::size_t symbol) const;
  /// Flat array of the tuples of `symbol`, arity entries per tuple.
  std::span<const Element> flat(std::size_t symbol) const { return flat_.at(symbol); }
  std::span<const Element> tuple(std::size_t symbol, std::size_t index) const;
  std::vector<Tuple> tuples(std::size_t symbol) const;
  bool contains(std::size_t symbol, std::span<const Element> t) const;

  bool operator==(const FiniteRelStruct&) const = default;

 private:
  void normalize();

  Signature signature_;
  std::size_t size_ = 0;
  std::vector<std::vector<Element>> flat_;
};

/// Canonical representative of an isomorphism class. Codes are opaque byte
/// strings whose first bytes carry the canonicalizer version.
struct IsoType {
  std::string code;
  std::size_t degree = 0;

  bool operator==(const IsoType&) const = default;
  auto operator<=>(const IsoType&) const = default;

  std::string hex() const;
};

struct IsoTypeHash {
  std::size_t operator()(const IsoType& t) const noexcept;
};

/// Version tag embedded at the start of every canonical code.
inline constexpr std::string_view kCanonicalCodeVersion = "AGC1";

/// Induced substructure on `subset`, reindexed by position in `subset`.
/// Throws InputError on out-of-range or repeated elements.
FiniteRelStruct restrict(const FiniteRelStruct& s, std::span<const Element> subset);

/// First isomorphism from `a` onto `b` in lexicographic search order, as the
/// image of each element of `a`. Throws InputError if the signatures differ.
std::optional<std::vector<Element>> find_isomorphism(const FiniteRelStruct& a, const FiniteRelStruct& b);

/// Relabels `s` by `perm` (element v becomes perm[v]).
FiniteRelStruct relabel(const FiniteRelStruct& s, std::span<const Element> perm);

IsoType canonical_code(const FiniteRelStruct& s);

/// Canonical labeling: element v is sent to position labeling[v] of the canonical form.
std::vector<Element> canonical_labeling(const FiniteRelStruct& s);

/// Classifies all n-element induced substructures of `s` by isomorphism type.
std::map<IsoType, std::size_t> subset_types(const FiniteRelStruct& s, std::size_t n);

/// Adds one fresh unary symbol per element of `marked`, holding exactly that
/// element. Isomorphisms of the result are those of `s` fixing `marked` pointwise.
FiniteRelStruct mark_elements(const FiniteRelStruct& s, std::span<const Element> marked);

/// Calls `visit` with every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<Element> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = static_cast<Element>(i);
  while (true) {
    visit(std::span<const Element>(subset));
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace agealg
