#include "agealg/block_template.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "agealg/error.hpp"

namespace agealg {

TuplePattern TuplePattern::normalized() const {
  if (blocks.size() != ranks.size()) throw InputError("pattern blocks and ranks differ in length");
  TuplePattern out{blocks, ranks};
  std::map<std::uint32_t, std::vector<std::uint32_t>> used;
  for (std::size_t i = 0; i < blocks.size(); ++i) used[blocks[i]].push_back(ranks[i]);
  for (auto& [block, rs] : used) {
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& rs = used[blocks[i]];
    out.ranks[i] = static_cast<std::uint32_t>(std::lower_bound(rs.begin(), rs.end(), ranks[i]) - rs.begin());
  }
  return out;
}

std::size_t Composition::degree() const {
  std::size_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

std::vector<std::uint32_t> Composition::shape() const {
  auto s = counts_;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

bool Composition::fits_in(const Composition& other) const {
  if (other.blocks() != blocks()) return false;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] > other.counts_[i]) return false;
  }
  return true;
}

std::string Composition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < counts_.size(); ++i) os << (i ? "," : "") << counts_[i];
  os << ')';
  return os.str();
}

std::size_t CompositionHash::operator()(const Composition& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : c.counts()) h = (h ^ v) * 0x100000001b3ULL;
  return h;
}

BlockTemplate::BlockTemplate(Signature signature, std::vector<Block> blocks,
                             std::vector<std::vector<TuplePattern>> accepted)
    : signature_(std::move(signature)), blocks_(std::move(blocks)), accepted_(std::move(accepted)) {
  if (accepted_.size() != signature_.size()) {
    throw InputError("accepted pattern lists do not match the signature");
  }
  for (auto& patterns : accepted_) {
    for (auto& p : patterns) p = p.normalized();
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  }
}

std::size_t BlockTemplate::infinite_block_count() const {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.infinite(); }));
}

Diagnostics validate_structure(const BlockTemplate& t) {
  Diagnostics d;
  auto fail = [&](std::string msg) {
    d.ok = false;
    d.messages.push_back(std::move(msg));
  };
  if (t.blocks().empty()) fail("template has no blocks");
  for (const auto& b : t.blocks()) {
    if (!b.infinite() && b.capacity == 0) fail("block '" + b.name + "' has capacity 0");
  }
  for (std::size_t s = 0; s < t.signature().size(); ++s) {
    const auto& patterns = t.accepted(s);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const auto& p = patterns[i];
      const std::string where = "symbol '" + t.signature().name(s) + "' pattern " + std::to_string(i);
      if (p.arity() != static_cast<std::size_t>(t.signature().arity(s))) {
        fail(where + ": arity mismatch");
        continue;
      }
      for (std::size_t c = 0; c < p.arity(); ++c) {
        if (p.blocks[c] >= t.block_count()) {
          fail(where + ": references block " + std::to_string(p.blocks[c]) + " of " +
               std::to_string(t.block_count()));
        } else if (!t.blocks()[p.blocks[c]].infinite() && p.ranks[c] >= t.blocks()[p.blocks[c]].capacity) {
          fail(where + ": rank " + std::to_string(p.ranks[c]) + " exceeds capacity of block '" +
               t.blocks()[p.blocks[c]].name + "'");
        }
      }
    }
  }
  return d;
}

Diagnostics validate(const BlockTemplate& t, std::size_t max_degree) {
  Diagnostics d = validate_structure(t);
  if (!d.ok) return d;
  for (std::size_t degree = 0; degree <= max_degree; ++degree) {
    for (const auto& comp : compositions_of_degree(t, degree)) {
      const auto s = instantiate(t, comp);
      std::map<Composition, IsoType> seen;
      for (std::size_t k = 0; k <= s.size(); ++k) {
        for_each_subset(s.size(), k, [&](std::span<const Element> subset) {
          auto type = canonical_code(restrict(s, subset));
          auto [it, inserted] = seen.emplace(composition_of(comp, subset), type);
          if (!inserted && it->second != type) {
            d.ok = false;
            d.messages.push_back("instantiation " + comp.str() + ": subsets with counts " + it->first.str() +
                                 " are not isomorphic");
          }
        });
      }
    }
  }
  return d;
}

void require_valid(const BlockTemplate& t) {
  const auto d = validate_structure(t);
  if (d.ok) return;
  std::string msg = "invalid template:";
  for (const auto& m : d.messages) msg += "\n  " + m;
  throw InputError(msg);
}

std::vector<std::size_t> block_offsets(const Composition& d) {
  std::vector<std::size_t> offsets(d.blocks() + 1, 0);
  for (std::size_t x = 0; x < d.blocks(); ++x) offsets[x + 1] = offsets[x] + d[x];
  return offsets;
}

Composition composition_of(const Composition& d, std::span<const Element> subset) {
  const auto offsets = block_offsets(d);
  std::vector<std::uint32_t> counts(d.blocks(), 0);
  for (Element e : subset) {
    const auto x = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), e) - offsets.begin()) - 1;
    ++counts[x];
  }
  return Composition(std::move(counts));
}

FiniteRelStruct instantiate(const BlockTemplate& t, const Composition& d) {
  if (d.blocks() != t.block_count()) throw InputError("composition has wrong number of blocks");
  for (std::size_t x = 0; x < d.blocks(); ++x) {
    if (!t.blocks()[x].infinite() && d[x] > t.blocks()[x].capacity) {
      throw InputError("composition " + d.str() + " exceeds capacity of block '" + t.blocks()[x].name + "'");
    }
  }
  const auto offsets = block_offsets(d);
  std::vector<std::vector<Tuple>> relations(t.signature().size());
  for (std::size_t s = 0; s < t.signature().size(); ++s) {
    for (const auto& p : t.accepted(s)) {
      // Distinct ranks needed per block.
      std::map<std::uint32_t, std::size_t> width;
      for (std::size_t c = 0; c < p.arity(); ++c) {
        width[p.blocks[c]] = std::max<std::size_t>(width[p.blocks[c]], p.ranks[c] + 1);
      }
      std::vector<std::pair<std::uint32_t, std::size_t>> groups(width.begin(), width.end());
      bool feasible = true;
      for (const auto& [x, w] : groups) feasible = feasible && w <= d[x];
      if (!feasible) continue;
      // Odometer over the choices of each block group.
      std::vector<std::vector<std::vector<Element>>> choices(groups.size());
      for (std::size_t g = 0; g < groups.size(); ++g) {
        for_each_subset(d[groups[g].first], groups[g].second, [&](std::span<const Element> c) {
          choices[g].emplace_back(c.begin(), c.end());
        });
      }
      std::vector<std::size_t> pick(groups.size(), 0);
      std::map<std::uint32_t, std::size_t> group_of;
      for (std::size_t g = 0; g < groups.size(); ++g) group_of[groups[g].first] = g;
      while (true) {
        Tuple tuple(p.arity());
        for (std::size_t c = 0; c < p.arity(); ++c) {
          const std::size_t g = group_of[p.blocks[c]];
          tuple[c] = static_cast<Element>(offsets[p.blocks[c]] + choices[g][pick[g]][p.ranks[c]]);
        }
        relations[s].push_back(std::move(tuple));
        std::size_t g = 0;
        while (g < groups.size() && ++pick[g] == choices[g].size()) pick[g++] = 0;
        if (g == groups.size()) break;
      }
    }
  }
  return FiniteRelStruct(t.signature(), d.degree(), relations);
}

std::vector<Composition> compositions_of_degree(const BlockTemplate& t, std::size_t degree) {
  std::vector<Composition> out;
  const std::size_t nb = t.block_count();
  std::vector<std::uint32_t> counts(nb, 0);
  // Remaining capacity of blocks x..nb-1, saturating at degree.
  std::vector<std::size_t> tail(nb + 1, 0);
  for (std::size_t x = nb; x-- > 0;) {
    const std::size_t cap = t.blocks()[x].infinite() ? degree : std::min(degree, t.blocks()[x].capacity);
    tail[x] = std::min(degree, tail[x + 1] + cap);
  }
  auto rec = [&](auto&& self, std::size_t x, std::size_t remaining) -> void {
    if (x == nb) {
      if (remaining == 0) out.emplace_back(counts);
      return;
    }
    if (tail[x] < remaining) return;
    const std::size_t cap = t.blocks()[x].infinite() ? remaining : std::min(remaining, t.blocks()[x].capacity);
    for (std::size_t c = cap + 1; c-- > 0;) {
      counts[x] = static_cast<std::uint32_t>(c);
      self(self, x + 1, remaining - c);
    }
    counts[x] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

std::vector<Composition> sub_compositions(const Composition& d) {
  std::vector<Composition> out;
  std::vector<std::uint32_t> c(d.blocks(), 0);
  while (true) {
    out.emplace_back(c);
    std::size_t x = d.blocks();
    while (true) {
      if (x == 0) return out;
      --x;
      if (c[x] < d[x]) {
        ++c[x];
        break;
      }
      c[x] = 0;
    }
  }
}

const IsoType& CompositionTyper::type_of(const Composition& d) {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
  }
  auto type = canonical_code(instantiate(template_, d));
  std::lock_guard lock(mutex_);
  return cache_.emplace(d, std::move(type)).first->second;
}

std::size_t CompositionTyper::cached() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace agealg
