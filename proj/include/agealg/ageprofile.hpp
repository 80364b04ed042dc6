#pragma once

// Profiles, the orbit-sum basis of the age algebra, structure constants and
// bounded-degree kernel detection, all computed at the level of compositions:
// a subset of an instantiation has the type of its block-count vector.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agealg/block_template.hpp"
#include "agealg/numeric.hpp"
#include "agealg/polynomial.hpp"

namespace agealg {

/// Position of a type in a registry: degree, then index in order of first realization.
struct TypeId {
  std::size_t degree = 0;
  std::size_t index = 0;

  bool operator==(const TypeId&) const = default;
  auto operator<=>(const TypeId&) const = default;
};

struct TypeInfo {
  IsoType type;
  /// Compositions realizing the type, in the enumeration order of compositions_of_degree.
  std::vector<Composition> realizations;
  /// Maximum realization under compare_monomials.
  Composition leading;
};

/// Isomorphism types of a template, degree by degree.
///
/// Building is single-writer (not thread-safe); once a degree is built, the
/// const accessors for it are safe to call concurrently.
class TypeRegistry {
 public:
  explicit TypeRegistry(BlockTemplate t, unsigned threads = 1);
  TypeRegistry(const TypeRegistry&) = delete;
  TypeRegistry& operator=(const TypeRegistry&) = delete;

  const BlockTemplate& block_template() const { return typer_.block_template(); }

  /// Builds every degree <= D not yet built.
  void build(std::size_t D);
  /// Number of degrees built (degrees 0..built()-1 are available).
  std::size_t built() const { return by_degree_.size(); }

  const std::vector<TypeInfo>& types(std::size_t n);
  const TypeInfo& info(const TypeId& id);
  TypeId id_of(const Composition& d);
  /// Looks the type up at its own degree; nullopt if the template does not realize it.
  std::optional<TypeId> find(const IsoType& type);
  std::size_t composition_count(std::size_t n);

 private:
  CompositionTyper typer_;
  unsigned threads_;
  std::vector<std::vector<TypeInfo>> by_degree_;
  std::vector<std::size_t> composition_counts_;
  std::unordered_map<Composition, std::size_t, CompositionHash> index_of_;
  std::unordered_map<IsoType, TypeId, IsoTypeHash> lookup_;
};

/// phi(n) for the structure presented by t.
std::size_t profile(const BlockTemplate& t, std::size_t n);

struct ProfileReport {
  IntSeries series;  // phi(0..D)
  bool nondecreasing = true;
};

ProfileReport profile_series(TypeRegistry& reg, std::size_t D);

/// For a representative composition d and a split degree m, the number of ways
/// to write d's subset as A1 + A2 with |A1| = m, grouped by the pair of types.
std::map<std::pair<std::size_t, std::size_t>, BigInt> split_counts(TypeRegistry& reg, const Composition& d,
                                                                   std::size_t m);

/// c^tau_{tau1,tau2}. Computed on two distinct realizations of tau when it has
/// them; a disagreement raises ConsistencyError. InputError on degree mismatch.
BigInt structure_constant(TypeRegistry& reg, const TypeId& tau1, const TypeId& tau2, const TypeId& tau);
BigInt structure_constant(TypeRegistry& reg, const IsoType& tau1, const IsoType& tau2, const IsoType& tau);

/// Finitely supported linear combination of orbit sums.
using OrbitSum = std::map<IsoType, BigInt>;

/// Orbit sum of the empty type (the unit of the algebra).
OrbitSum unit_orbit_sum(TypeRegistry& reg);
/// e: the sum of the orbit sums of all one-element types.
OrbitSum e_orbit_sum(TypeRegistry& reg);

/// Product in the age algebra of two homogeneous elements. InputError if an
/// input is inhomogeneous or mentions a type the template does not realize.
OrbitSum orbit_product(TypeRegistry& reg, const OrbitSum& a, const OrbitSum& b);

/// Matrix of multiplication by e from degree n to n+1: rows are degree-(n+1)
/// types, columns degree-n types.
std::vector<std::vector<BigInt>> mult_by_e_matrix(TypeRegistry& reg, std::size_t n);
std::size_t mult_by_e_rank(TypeRegistry& reg, std::size_t n);

struct KernelReport {
  std::vector<BlockElement> elements;
  std::size_t degree_bound = 0;
};

/// Finite-block elements whose removal loses some type of degree <= D. Every
/// reported element is in the kernel; elements needing larger witnesses are missed.
KernelReport kernel_elements_bounded(const BlockTemplate& t, std::size_t D);

}  // namespace agealg
