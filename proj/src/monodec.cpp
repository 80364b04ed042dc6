#include "agealg/monodec.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "agealg/error.hpp"

namespace agealg {

Partition::Partition(std::vector<std::vector<Element>> blocks, std::size_t n) : n_(n) {
  std::vector<bool> seen(n, false);
  for (auto& b : blocks) {
    if (b.empty()) throw InputError("partition has an empty block");
    std::sort(b.begin(), b.end());
    for (Element e : b) {
      if (e >= n) throw InputError("partition element " + std::to_string(e) + " out of range");
      if (seen[e]) throw InputError("partition blocks overlap at element " + std::to_string(e));
      seen[e] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("partition does not cover");
  std::sort(blocks.begin(), blocks.end());
  blocks_ = std::move(blocks);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.n_ != n_) return false;
  std::vector<std::size_t> owner(n_);
  for (std::size_t i = 0; i < coarser.blocks_.size(); ++i) {
    for (Element e : coarser.blocks_[i]) owner[e] = i;
  }
  for (const auto& b : blocks_) {
    for (Element e : b) {
      if (owner[e] != owner[b.front()]) return false;
    }
  }
  return true;
}

namespace {

using Mask = std::uint64_t;

// Canonical codes of induced substructures, keyed by element bitmask.
class SubsetCodes {
 public:
  explicit SubsetCodes(const FiniteRelStruct& s) : s_(s) {
    if (s.size() > kMaxExhaustiveSize) {
      throw InputError("structure of size " + std::to_string(s.size()) + " is too large for exhaustive subset tests");
    }
  }

  const IsoType& operator()(Mask m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::vector<Element> subset;
    for (Mask r = m; r; r &= r - 1) subset.push_back(static_cast<Element>(std::countr_zero(r)));
    return cache_.emplace(m, canonical_code(restrict(s_, subset))).first->second;
  }

 private:
  const FiniteRelStruct& s_;
  std::unordered_map<Mask, IsoType> cache_;
};

// Calls visit(sub) for every submask of `m`, including 0 and m.
template <typename Visit>
bool all_submasks(Mask m, Visit&& visit) {
  Mask sub = m;
  while (true) {
    if (!visit(sub)) return false;
    if (sub == 0) return true;
    sub = (sub - 1) & m;
  }
}

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

Mask mask_of(std::span<const Element> F, std::size_t n) {
  Mask m = 0;
  for (Element e : F) {
    if (e >= n) throw InputError("element " + std::to_string(e) + " out of range");
    m |= Mask{1} << e;
  }
  return m;
}

bool mergeable_with(SubsetCodes& codes, std::size_t n, Element a, Element b) {
  const Mask rest = full_mask(n) & ~(Mask{1} << a) & ~(Mask{1} << b);
  return all_submasks(rest, [&](Mask B) { return codes(B | (Mask{1} << a)) == codes(B | (Mask{1} << b)); });
}

// Classes of a symmetric relation given as a predicate; throws if not transitive.
template <typename Related>
std::vector<std::vector<std::size_t>> classes_of(std::size_t n, Related&& related, const char* what) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    rel[i][i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      rel[i][j] = rel[j][i] = related(i, j);
      if (rel[i][j]) parent[root(j)] = root(i);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[root(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, members] : groups) {
    for (auto i : members) {
      for (auto j : members) {
        if (!rel[i][j]) {
          throw ConsistencyError(std::string(what) + " is not transitive (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
        }
      }
    }
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_monomorphic_part(const FiniteRelStruct& S, std::span<const Element> F) {
  SubsetCodes codes(S);
  const std::size_t n = S.size();
  const Mask f = mask_of(F, n);
  const Mask outside = full_mask(n) & ~f;
  return all_submasks(outside, [&](Mask B) {
    // Among subsets B + C with C inside F, the type may depend on |C| only.
    std::map<int, const IsoType*> by_size;
    return all_submasks(f, [&](Mask C) {
      const IsoType& code = codes(B | C);
      auto [it, inserted] = by_size.emplace(std::popcount(C), &code);
      return inserted || *it->second == code;
    });
  });
}

bool pair_mergeable(const FiniteRelStruct& S, Element a, Element b) {
  if (a == b) throw InputError("pair_mergeable needs two distinct elements");
  if (a >= S.size() || b >= S.size()) throw InputError("pair_mergeable: element out of range");
  SubsetCodes codes(S);
  return mergeable_with(codes, S.size(), a, b);
}

Partition minimal_decomposition(const FiniteRelStruct& S) {
  SubsetCodes codes(S);
  const auto classes = classes_of(
      S.size(),
      [&](std::size_t i, std::size_t j) {
        return mergeable_with(codes, S.size(), static_cast<Element>(i), static_cast<Element>(j));
      },
      "pair_mergeable");
  std::vector<std::vector<Element>> blocks;
  for (const auto& c : classes) blocks.emplace_back(c.begin(), c.end());
  return Partition(std::move(blocks), S.size());
}

Composition fat_level(const BlockTemplate& t, std::size_t d) {
  std::vector<std::uint32_t> counts;
  for (const auto& b : t.blocks()) counts.push_back(static_cast<std::uint32_t>(std::min(b.capacity, d)));
  return Composition(std::move(counts));
}

bool blocks_mergeable(CompositionTyper& typer, const Composition& level, std::size_t x, std::size_t y) {
  if (x == y) return true;
  if (level[x] == 0 || level[y] == 0) throw InputError("blocks_mergeable: both blocks must be present at this level");
  Composition rest = level;
  --rest[x];
  --rest[y];
  for (const auto& c : sub_compositions(rest)) {
    Composition cx = c, cy = c;
    ++cx[x];
    ++cy[y];
    if (typer.type_of(cx) != typer.type_of(cy)) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> block_coarsening(CompositionTyper& typer, const Composition& level) {
  return classes_of(
      level.blocks(), [&](std::size_t x, std::size_t y) { return blocks_mergeable(typer, level, x, y); },
      "block mergeability");
}

FatnessResult fatness_threshold(const BlockTemplate& t, std::size_t d_max) {
  require_valid(t);
  if (d_max == 0) throw InputError("fatness bound must be positive");
  FatnessResult r;
  r.d_max = d_max;
  CompositionTyper typer(t);
  r.coarsenings.push_back(block_coarsening(typer, fat_level(t, 1)));
  for (std::size_t d = 1; d <= d_max; ++d) {
    r.coarsenings.push_back(block_coarsening(typer, fat_level(t, d + 1)));
    if (r.coarsenings[d - 1] == r.coarsenings[d]) {
      r.d = d;
      return r;
    }
    r.diagnostics.push_back("levels " + std::to_string(d) + " and " + std::to_string(d + 1) +
                            " give different block coarsenings");
  }
  r.diagnostics.push_back("no stable level up to " + std::to_string(d_max));
  return r;
}

Components template_components(const BlockTemplate& t, std::size_t d_max) {
  const auto fat = fatness_threshold(t, d_max);
  if (!fat.d) {
    std::string msg = "fatness threshold undetermined:";
    for (const auto& m : fat.diagnostics) msg += "\n  " + m;
    throw UndeterminedError(msg);
  }
  Components c;
  c.d = *fat.d;
  c.d_max = d_max;
  c.classes = fat.coarsenings[c.d - 1];
  for (const auto& cls : c.classes) {
    std::size_t size = 0;
    for (auto x : cls) {
      const auto cap = t.blocks()[x].capacity;
      size = (cap == kInfinite || size == kInfinite) ? kInfinite : size + cap;
    }
    c.sizes.push_back(size);
    if (size == kInfinite) ++c.k;
    if (size >= c.d) {
      c.n0 += c.d;
    } else {
      c.n0 += size;
    }
  }
  return c;
}

BigInt partition_lower_bound(std::size_t k, std::size_t n, std::size_t n0) {
  if (k == 0) throw InputError("partition_lower_bound needs k >= 1");
  if (n < n0) return 0;
  return partitions_at_most(k, n - n0);
}

bool is_F_monomorphic_up_to(const FiniteRelStruct& S, std::span<const Element> F, std::size_t D) {
  const std::size_t n = S.size();
  const Mask f = mask_of(F, n);
  std::vector<Element> fixed(F.begin(), F.end());
  std::vector<Element> outside;
  for (Element e = 0; e < n; ++e) {
    if (!(f >> e & 1)) outside.push_back(e);
  }
  for (std::size_t m = 0; m <= std::min(D, outside.size()); ++m) {
    std::optional<IsoType> first;
    bool ok = true;
    for_each_subset(outside.size(), m, [&](std::span<const Element> idx) {
      if (!ok) return;
      // F first, so that marks refer to positions 0..|F|-1.
      std::vector<Element> elems = fixed;
      for (Element i : idx) elems.push_back(outside[i]);
      std::vector<Element> marks(fixed.size());
      std::iota(marks.begin(), marks.end(), 0);
      auto code = canonical_code(mark_elements(restrict(S, elems), marks));
      if (!first) {
        first = std::move(code);
      } else if (*first != code) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool is_F_monomorphic_up_to(const BlockTemplate& t, const std::vector<BlockElement>& F, std::size_t D) {
  require_valid(t);
  const std::size_t nb = t.block_count();
  // Sorted F positions per block; the free elements of block b fall into gaps around them.
  std::vector<std::vector<std::size_t>> pins(nb);
  for (const auto& e : F) {
    if (e.block >= nb) throw InputError("F references a missing block");
    if (!t.blocks()[e.block].infinite() && e.index >= t.blocks()[e.block].capacity) {
      throw InputError("F element beyond the capacity of block '" + t.blocks()[e.block].name + "'");
    }
    pins[e.block].push_back(e.index);
  }
  std::vector<Block> gap_blocks;
  std::vector<std::pair<std::size_t, std::size_t>> gap_owner;  // (block, gap index)
  for (std::size_t b = 0; b < nb; ++b) {
    auto& p = pins[b];
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) throw InputError("F lists an element twice");
    const std::size_t cap = t.blocks()[b].capacity;
    std::size_t prev = 0;
    for (std::size_t g = 0; g <= p.size(); ++g) {
      std::size_t width;
      if (g < p.size()) {
        width = p[g] - prev;
        prev = p[g] + 1;
      } else {
        width = cap == kInfinite ? kInfinite : cap - prev;
      }
      gap_blocks.push_back({"", width});
      gap_owner.emplace_back(b, g);
    }
  }
  // Enumerate gap fillings through a dummy template with the gap capacities.
  const BlockTemplate gaps(Signature({{"_", 1}}), gap_blocks, {{}});
  for (std::size_t m = 0; m <= D; ++m) {
    std::optional<IsoType> first;
    for (const auto& g : compositions_of_degree(gaps, m)) {
      std::vector<std::uint32_t> counts(nb, 0);
      for (std::size_t i = 0; i < g.blocks(); ++i) counts[gap_owner[i].first] += g[i];
      for (std::size_t b = 0; b < nb; ++b) counts[b] += static_cast<std::uint32_t>(pins[b].size());
      const Composition d(counts);
      const auto offsets = block_offsets(d);
      std::vector<Element> marks;
      std::size_t i = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        std::size_t pos = offsets[b];
        for (std::size_t j = 0; j < pins[b].size(); ++j, ++i) {
          pos += g[i];
          marks.push_back(static_cast<Element>(pos++));
        }
        ++i;  // trailing gap
      }
      auto code = canonical_code(mark_elements(instantiate(t, d), marks));
      if (!first) {
        first = std::move(code);
      } else if (*first != code) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace agealg
