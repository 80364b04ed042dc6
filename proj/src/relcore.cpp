#include "agealg/relcore.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "agealg/error.hpp"

namespace agealg {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("signature must contain at least one symbol");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.arity < 1) throw InputError("symbol '" + s.name + "' must have arity >= 1");
    if (!seen.insert(s.name).second) throw InputError("duplicate symbol name '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

FiniteRelStruct::FiniteRelStruct(Signature signature, std::size_t size)
    : signature_(std::move(signature)), size_(size), flat_(signature_.size()) {}

FiniteRelStruct::FiniteRelStruct(Signature signature, std::size_t size,
                                 const std::vector<std::vector<Tuple>>& relations)
    : FiniteRelStruct(std::move(signature), size) {
  if (relations.size() != signature_.size()) {
    throw InputError("relation list does not match the signature");
  }
  for (std::size_t s = 0; s < relations.size(); ++s) {
    const auto arity = static_cast<std::size_t>(signature_.arity(s));
    for (const auto& t : relations[s]) {
      if (t.size() != arity) {
        throw InputError("tuple of wrong arity for symbol '" + signature_.name(s) + "'");
      }
      for (Element e : t) {
        if (e >= size_) throw InputError("tuple entry out of range for symbol '" + signature_.name(s) + "'");
      }
      flat_[s].insert(flat_[s].end(), t.begin(), t.end());
    }
  }
  normalize();
}

void FiniteRelStruct::normalize() {
  for (std::size_t s = 0; s < flat_.size(); ++s) {
    const auto arity = static_cast<std::size_t>(signature_.arity(s));
    std::vector<Tuple> ts;
    ts.reserve(flat_[s].size() / arity);
    for (std::size_t i = 0; i < flat_[s].size(); i += arity) {
      ts.emplace_back(flat_[s].begin() + static_cast<std::ptrdiff_t>(i),
                      flat_[s].begin() + static_cast<std::ptrdiff_t>(i + arity));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    flat_[s].clear();
    for (const auto& t : ts) flat_[s].insert(flat_[s].end(), t.begin(), t.end());
  }
}

std::size_t FiniteRelStruct::tuple_count(std::size_t symbol) const {
  return flat_.at(symbol).size() / static_cast<std::size_t>(signature_.arity(symbol));
}

std::span<const Element> FiniteRelStruct::tuple(std::size_t symbol, std::size_t index) const {
  const auto arity = static_cast<std::size_t>(signature_.arity(symbol));
  return std::span<const Element>(flat_.at(symbol)).subspan(index * arity, arity);
}

std::vector<Tuple> FiniteRelStruct::tuples(std::size_t symbol) const {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < tuple_count(symbol); ++i) {
    auto t = tuple(symbol, i);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

bool FiniteRelStruct::contains(std::size_t symbol, std::span<const Element> t) const {
  std::size_t lo = 0;
  std::size_t hi = tuple_count(symbol);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = tuple(symbol, mid);
    if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < tuple_count(symbol) && std::ranges::equal(tuple(symbol, lo), t);
}

std::string IsoType::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char c : code) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

std::size_t IsoTypeHash::operator()(const IsoType& t) const noexcept {
  return std::hash<std::string>{}(t.code) ^ (t.degree * 0x9e3779b97f4a7c15ULL);
}

FiniteRelStruct restrict(const FiniteRelStruct& s, std::span<const Element> subset) {
  constexpr Element kAbsent = std::numeric_limits<Element>::max();
  std::vector<Element> position(s.size(), kAbsent);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Element e = subset[i];
    if (e >= s.size()) throw InputError("subset element out of range");
    if (position[e] != kAbsent) throw InputError("subset element repeated");
    position[e] = static_cast<Element>(i);
  }
  std::vector<std::vector<Tuple>> relations(s.signature().size());
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
    for (std::size_t i = 0; i < s.tuple_count(sym); ++i) {
      auto t = s.tuple(sym, i);
      Tuple mapped;
      mapped.reserve(t.size());
      bool inside = true;
      for (Element e : t) {
        if (position[e] == kAbsent) {
          inside = false;
          break;
        }
        mapped.push_back(position[e]);
      }
      if (inside) relations[sym].push_back(std::move(mapped));
    }
  }
  return FiniteRelStruct(s.signature(), subset.size(), relations);
}

FiniteRelStruct relabel(const FiniteRelStruct& s, std::span<const Element> perm) {
  std::vector<std::vector<Tuple>> relations(s.signature().size());
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
    for (std::size_t i = 0; i < s.tuple_count(sym); ++i) {
      Tuple t;
      for (Element e : s.tuple(sym, i)) t.push_back(perm[e]);
      relations[sym].push_back(std::move(t));
    }
  }
  return FiniteRelStruct(s.signature(), s.size(), relations);
}

FiniteRelStruct mark_elements(const FiniteRelStruct& s, std::span<const Element> marked) {
  std::vector<Symbol> symbols = s.signature().symbols();
  std::vector<std::vector<Tuple>> relations;
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym) relations.push_back(s.tuples(sym));
  for (std::size_t i = 0; i < marked.size(); ++i) {
    symbols.push_back({"__mark" + std::to_string(i), 1});
    relations.push_back({Tuple{marked[i]}});
  }
  return FiniteRelStruct(Signature(std::move(symbols)), s.size(), relations);
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

class IsoSearch {
 public:
  IsoSearch(const FiniteRelStruct& a, const FiniteRelStruct& b) : a_(a), b_(b), n_(a.size()) {
    const std::size_t nsym = a.signature().size();
    a_by_max_.assign(nsym, std::vector<std::vector<std::size_t>>(n_));
    b_incident_.assign(nsym, std::vector<std::vector<std::size_t>>(n_));
    for (std::size_t s = 0; s < nsym; ++s) {
      for (std::size_t i = 0; i < a.tuple_count(s); ++i) {
        auto t = a.tuple(s, i);
        a_by_max_[s][*std::max_element(t.begin(), t.end())].push_back(i);
      }
      for (std::size_t i = 0; i < b.tuple_count(s); ++i) {
        std::set<Element> distinct(b.tuple(s, i).begin(), b.tuple(s, i).end());
        for (Element e : distinct) b_incident_[s][e].push_back(i);
      }
    }
    b_inside_.assign(nsym, 0);
    a_inside_.assign(nsym, 0);
  }

  std::optional<std::vector<Element>> run() {
    map_.assign(n_, 0);
    used_.assign(n_, false);
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  // Maps element `v` of a; elements 0..v-1 are already mapped.
  bool extend(std::size_t v) {
    if (v == n_) return true;
    for (Element image = 0; image < n_; ++image) {
      if (used_[image]) continue;
      map_[v] = image;
      used_[image] = true;
      if (consistent(v, image) && extend(v + 1)) return true;
      undo(v, image);
      used_[image] = false;
    }
    return false;
  }

  bool consistent(std::size_t v, Element image) {
    // Tuples of a completed by v must map into b, and the number of b tuples
    // inside the image set must match the number of a tuples inside 0..v.
    bool ok = true;
    Tuple mapped;
    for (std::size_t s = 0; s < a_by_max_.size(); ++s) {
      for (std::size_t i : a_by_max_[s][v]) {
        mapped.clear();
        for (Element e : a_.tuple(s, i)) mapped.push_back(map_[e]);
        if (!b_.contains(s, mapped)) ok = false;
      }
      a_inside_[s] += a_by_max_[s][v].size();
      for (std::size_t i : b_incident_[s][image]) {
        bool inside = true;
        for (Element e : b_.tuple(s, i)) inside = inside && used_[e];
        if (inside) ++b_inside_[s];
      }
      if (a_inside_[s] != b_inside_[s]) ok = false;
    }
    return ok;
  }

  void undo(std::size_t v, Element image) {
    for (std::size_t s = 0; s < a_by_max_.size(); ++s) {
      a_inside_[s] -= a_by_max_[s][v].size();
      for (std::size_t i : b_incident_[s][image]) {
        bool inside = true;
        for (Element e : b_.tuple(s, i)) inside = inside && used_[e];
        if (inside) --b_inside_[s];
      }
    }
  }

  const FiniteRelStruct& a_;
  const FiniteRelStruct& b_;
  std::size_t n_;
  std::vector<std::vector<std::vector<std::size_t>>> a_by_max_;
  std::vector<std::vector<std::vector<std::size_t>>> b_incident_;
  std::vector<std::size_t> a_inside_;
  std::vector<std::size_t> b_inside_;
  std::vector<Element> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FiniteRelStruct& a, const FiniteRelStruct& b) {
  if (!(a.signature() == b.signature())) throw InputError("find_isomorphism: signatures differ");
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    if (a.tuple_count(s) != b.tuple_count(s)) return std::nullopt;
  }
  return IsoSearch(a, b).run();
}

// ---------------------------------------------------------------------------
// Canonical labeling by individualization and refinement with automorphism
// pruning. Colors are dense ranks; cell order is part of the invariant.

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix(h ^ (v + 0x632be59bd9b4e019ULL + (h << 6))); }

using Coloring = std::vector<std::uint32_t>;

class Canonizer {
 public:
  explicit Canonizer(const FiniteRelStruct& s) : s_(s), n_(s.size()) {
    for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
      for (std::size_t i = 0; i < s.tuple_count(sym); ++i) tuples_.push_back({sym, i});
    }
  }

  std::vector<Element> run() {
    if (n_ == 0) return {};
    Coloring colors(n_, 0);
    refine(colors);
    path_.assign(n_, 0);
    search(colors, 0);
    return best_labeling_;
  }

 private:
  struct TupleRef {
    std::size_t symbol;
    std::size_t index;
  };

  static constexpr int kNoJump = INT_MAX;

  // Iterated color refinement; colors stay dense ranks ordered by (old color, signature).
  void refine(Coloring& colors) const {
    std::size_t ncolors = count_colors(colors);
    std::vector<std::uint64_t> sum1(n_);
    std::vector<std::uint64_t> sum2(n_);
    while (ncolors < n_) {
      std::fill(sum1.begin(), sum1.end(), 0);
      std::fill(sum2.begin(), sum2.end(), 0);
      for (const auto& ref : tuples_) {
        auto t = s_.tuple(ref.symbol, ref.index);
        std::uint64_t h = mix(ref.symbol + 1);
        for (Element e : t) h = combine(h, colors[e]);
        for (std::size_t p = 0; p < t.size(); ++p) {
          const std::uint64_t entry = combine(h, p + 1);
          sum1[t[p]] += mix(entry);
          sum2[t[p]] += mix(entry ^ 0x5851f42d4c957f2dULL);
        }
      }
      std::vector<std::pair<std::pair<std::uint32_t, std::uint64_t>, Element>> keyed(n_);
      for (Element v = 0; v < n_; ++v) {
        keyed[v] = {{colors[v], combine(sum1[v], sum2[v])}, v};
      }
      std::sort(keyed.begin(), keyed.end());
      std::uint32_t rank = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && keyed[i].first != keyed[i - 1].first) ++rank;
        colors[keyed[i].second] = rank;
      }
      const std::size_t refined = static_cast<std::size_t>(rank) + 1;
      if (refined == ncolors) break;
      ncolors = refined;
    }
  }

  static std::size_t count_colors(const Coloring& colors) {
    std::uint32_t mx = 0;
    for (auto c : colors) mx = std::max(mx, c);
    return colors.empty() ? 0 : static_cast<std::size_t>(mx) + 1;
  }

  Coloring individualize(const Coloring& colors, Element v) const {
    Coloring out(n_);
    for (Element u = 0; u < n_; ++u) {
      out[u] = colors[u] > colors[v] || (colors[u] == colors[v] && u != v) ? colors[u] + 1 : colors[u];
    }
    refine(out);
    return out;
  }

  std::vector<Element> certificate(const Coloring& labeling) const {
    std::vector<Element> cert;
    for (std::size_t sym = 0; sym < s_.signature().size(); ++sym) {
      std::vector<Tuple> ts;
      for (std::size_t i = 0; i < s_.tuple_count(sym); ++i) {
        Tuple t;
        for (Element e : s_.tuple(sym, i)) t.push_back(labeling[e]);
        ts.push_back(std::move(t));
      }
      std::sort(ts.begin(), ts.end());
      cert.push_back(static_cast<Element>(ts.size()));
      for (const auto& t : ts) cert.insert(cert.end(), t.begin(), t.end());
    }
    return cert;
  }

  // Orbit representative of `v` under the recorded automorphisms that fix path_[0..level).
  std::vector<Element> stabilizer_orbits(int level) const {
    std::vector<Element> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : generators_) {
      bool fixes = true;
      for (int i = 0; i < level && fixes; ++i) fixes = g[path_[i]] == path_[i];
      if (!fixes) continue;
      for (Element x = 0; x < n_; ++x) {
        Element a = find(x);
        Element b = find(g[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Element x = 0; x < n_; ++x) parent[x] = find(x);
    return parent;
  }

  int divergence(const std::vector<Element>& other_path, int depth) const {
    for (int i = 0; i < depth; ++i) {
      if (path_[i] != other_path[i]) return i;
    }
    return depth;
  }

  int leaf(const Coloring& labeling, int depth) {
    auto cert = certificate(labeling);
    if (!have_leaf_) {
      have_leaf_ = true;
      first_cert_ = cert;
      best_cert_ = std::move(cert);
      first_labeling_ = labeling;
      best_labeling_ = labeling;
      first_path_.assign(path_.begin(), path_.begin() + depth);
      best_path_ = first_path_;
      return kNoJump;
    }
    auto record = [&](const std::vector<Element>& target) {
      // Position p of this leaf corresponds to the element at position p of the target leaf.
      std::vector<Element> inverse(n_);
      for (Element v = 0; v < n_; ++v) inverse[target[v]] = v;
      std::vector<Element> gamma(n_);
      for (Element v = 0; v < n_; ++v) gamma[v] = inverse[labeling[v]];
      generators_.push_back(std::move(gamma));
    };
    if (cert == first_cert_) {
      record(first_labeling_);
      return divergence(first_path_, depth);
    }
    if (cert == best_cert_) {
      record(best_labeling_);
      return divergence(best_path_, depth);
    }
    if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_labeling_ = labeling;
      best_path_.assign(path_.begin(), path_.begin() + depth);
    }
    return kNoJump;
  }

  int search(const Coloring& colors, int level) {
    if (count_colors(colors) == n_) return leaf(colors, level);
    // Target cell: the non-singleton cell of smallest color.
    std::vector<std::size_t> cell_size(n_, 0);
    for (auto c : colors) ++cell_size[c];
    std::uint32_t target = 0;
    while (cell_size[target] < 2) ++target;
    std::vector<Element> cell;
    for (Element v = 0; v < n_; ++v) {
      if (colors[v] == target) cell.push_back(v);
    }
    std::vector<Element> explored;
    for (Element v : cell) {
      if (!explored.empty() && !generators_.empty()) {
        auto orbit = stabilizer_orbits(level);
        const bool redundant = std::any_of(explored.begin(), explored.end(),
                                           [&](Element w) { return orbit[w] == orbit[v]; });
        if (redundant) continue;
      }
      path_[level] = v;
      const int jump = search(individualize(colors, v), level + 1);
      explored.push_back(v);
      if (jump < level) return jump;
    }
    return kNoJump;
  }

  const FiniteRelStruct& s_;
  std::size_t n_;
  std::vector<TupleRef> tuples_;
  std::vector<Element> path_;
  bool have_leaf_ = false;
  std::vector<Element> first_cert_;
  std::vector<Element> best_cert_;
  std::vector<Element> first_labeling_;
  std::vector<Element> best_labeling_;
  std::vector<Element> first_path_;
  std::vector<Element> best_path_;
  std::vector<std::vector<Element>> generators_;
};

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace

std::vector<Element> canonical_labeling(const FiniteRelStruct& s) { return Canonizer(s).run(); }

IsoType canonical_code(const FiniteRelStruct& s) {
  const auto labeling = canonical_labeling(s);
  std::string code(kCanonicalCodeVersion);
  put_varint(code, s.size());
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
    const auto& name = s.signature().name(sym);
    put_varint(code, name.size());
    code += name;
    put_varint(code, static_cast<std::uint64_t>(s.signature().arity(sym)));
    std::vector<Tuple> ts;
    for (std::size_t i = 0; i < s.tuple_count(sym); ++i) {
      Tuple t;
      for (Element e : s.tuple(sym, i)) t.push_back(labeling[e]);
      ts.push_back(std::move(t));
    }
    std::sort(ts.begin(), ts.end());
    put_varint(code, ts.size());
    for (const auto& t : ts) {
      for (Element e : t) put_varint(code, e);
    }
  }
  return IsoType{std::move(code), s.size()};
}

std::map<IsoType, std::size_t> subset_types(const FiniteRelStruct& s, std::size_t n) {
  if (n > s.size()) throw InputError("subset_types: degree exceeds structure size");
  std::map<IsoType, std::size_t> out;
  for_each_subset(s.size(), n, [&](std::span<const Element> subset) {
    ++out[canonical_code(restrict(s, subset))];
  });
  return out;
}

}  // namespace agealg
