#include "agealg/planar.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "agealg/error.hpp"

namespace agealg {

PlaneTree PlaneTree::empty() { return {}; }

PlaneTree PlaneTree::leaf() {
  PlaneTree t;
  t.kind_ = Kind::Leaf;
  return t;
}

PlaneTree PlaneTree::node(std::vector<PlaneTree> children) {
  if (children.empty()) throw InputError("an internal node needs children");
  for (const auto& c : children) {
    if (c.is_empty()) throw InputError("the empty tree cannot be a child");
  }
  PlaneTree t;
  t.kind_ = Kind::Node;
  t.children_ = std::move(children);
  return t;
}

PlaneTree PlaneTree::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& what) -> PlaneTree {
    throw InputError("tree '" + std::string(text) + "': " + what + " at offset " + std::to_string(pos));
  };
  auto rec = [&](auto&& self) -> PlaneTree {
    skip();
    if (pos >= text.size()) return fail("unexpected end");
    if (text[pos] == 'o') {
      ++pos;
      return leaf();
    }
    if (text[pos] != '(') return fail("expected 'o' or '('");
    ++pos;
    std::vector<PlaneTree> children;
    while (true) {
      children.push_back(self(self));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        return node(std::move(children));
      }
      return fail("expected ',' or ')'");
    }
  };
  skip();
  if (text.substr(pos) == "()") return empty();
  PlaneTree t = rec(rec);
  skip();
  if (pos != text.size()) fail("trailing characters");
  return t;
}

std::size_t PlaneTree::leaves() const {
  if (kind_ == Kind::Leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaves();
  return n;
}

std::size_t PlaneTree::height() const {
  std::size_t h = 0;
  for (const auto& c : children_) h = std::max(h, c.height() + 1);
  return h;
}

bool PlaneTree::is_reduced() const {
  if (kind_ != Kind::Node) return true;
  if (children_.size() < 2) return false;
  return std::all_of(children_.begin(), children_.end(), [](const PlaneTree& c) { return c.is_reduced(); });
}

std::string PlaneTree::str() const {
  switch (kind_) {
    case Kind::Empty:
      return "()";
    case Kind::Leaf:
      return "o";
    case Kind::Node:
      break;
  }
  std::string s = "(";
  for (std::size_t i = 0; i < children_.size(); ++i) s += (i ? "," : "") + children_[i].str();
  return s + ")";
}

PlaneTree reduce(const PlaneTree& t) {
  if (t.is_empty() || t.is_leaf()) return t;
  if (t.children().size() == 1) return reduce(t.children().front());
  std::vector<PlaneTree> children;
  for (const auto& c : t.children()) children.push_back(reduce(c));
  return PlaneTree::node(std::move(children));
}

void check_address(const LeafAddress& a) {
  if (a.empty()) throw InputError("empty leaf address");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) throw InputError("leaf address indices start at 1");
    const bool last = i + 1 == a.size();
    if (last != (a[i] % 2 == 1)) {
      throw InputError("leaf address must descend through even indices and end at an odd one");
    }
  }
}

namespace {

// Tree spanned by the sorted addresses [lo, hi), all sharing their first `depth` indices.
PlaneTree build_trie(const std::vector<LeafAddress>& a, std::size_t lo, std::size_t hi, std::size_t depth) {
  std::vector<PlaneTree> children;
  for (std::size_t i = lo; i < hi;) {
    if (a[i].size() == depth + 1) {
      children.push_back(PlaneTree::leaf());
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < hi && a[j].size() > depth + 1 && a[j][depth] == a[i][depth]) ++j;
    children.push_back(build_trie(a, i, j, depth + 1));
    i = j;
  }
  return PlaneTree::node(std::move(children));
}

}  // namespace

PlaneTree contract(std::vector<LeafAddress> A) {
  for (const auto& a : A) check_address(a);
  std::sort(A.begin(), A.end());
  if (std::adjacent_find(A.begin(), A.end()) != A.end()) throw InputError("duplicate leaf address");
  if (A.empty()) return PlaneTree::empty();
  return reduce(build_trie(A, 0, A.size(), 0));
}

std::vector<LeafAddress> embed(const PlaneTree& t) {
  std::vector<LeafAddress> out;
  if (t.is_empty()) return out;
  if (t.is_leaf()) return {{1}};
  auto rec = [&](auto&& self, const PlaneTree& node, LeafAddress& prefix) -> void {
    std::uint32_t next = 1;
    for (const auto& c : node.children()) {
      const bool leaf = c.is_leaf();
      std::uint32_t index = next;
      if ((index % 2 == 1) != leaf) ++index;
      prefix.push_back(index);
      if (leaf) {
        out.push_back(prefix);
      } else {
        self(self, c, prefix);
      }
      prefix.pop_back();
      next = index + 1;
    }
  };
  LeafAddress prefix;
  rec(rec, t, prefix);
  return out;
}

PlaneTree contract_leaves(const PlaneTree& t, const std::vector<std::size_t>& leaves) {
  const auto all = embed(t);
  std::vector<LeafAddress> chosen;
  for (auto i : leaves) {
    if (i >= all.size()) throw InputError("leaf position out of range");
    chosen.push_back(all[i]);
  }
  return contract(std::move(chosen));
}

TripleMap triples_of(const PlaneTree& t) {
  const auto all = embed(t);
  TripleMap out;
  for_each_subset(all.size(), 3, [&](std::span<const Element> s) {
    out.emplace(std::array<std::size_t, 3>{s[0], s[1], s[2]}, contract({all[s[0]], all[s[1]], all[s[2]]}));
  });
  return out;
}

std::optional<PlaneTree> reconstruct_from_triples(std::size_t d, const TripleMap& triples) {
  if (d < 3) throw InputError("triple reconstruction needs at least 3 leaves");
  auto triple = [&](std::size_t x, std::size_t y, std::size_t z) -> const PlaneTree& {
    auto it = triples.find({x, y, z});
    if (it == triples.end()) throw InputError("triple map is missing a 3-subset");
    return it->second;
  };
  for (const auto& [key, tree] : triples) {
    if (!(key[0] < key[1] && key[1] < key[2] && key[2] < d)) throw InputError("triple map has a malformed key");
  }
  const PlaneTree right = PlaneTree::parse("(o,(o,o))");
  const PlaneTree left = PlaneTree::parse("((o,o),o)");
  // [i, j] is a node interval iff leaves before it see (o,(o,o)) and leaves after it see ((o,o),o).
  std::vector<std::pair<std::size_t, std::size_t>> intervals;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      bool node = true;
      for (std::size_t k = 0; k < i && node; ++k) node = triple(k, i, j) == right;
      for (std::size_t k = j + 1; k < d && node; ++k) node = triple(i, j, k) == left;
      if (node) intervals.emplace_back(i, j);
    }
  }
  for (const auto& [a, b] : intervals) {
    for (const auto& [c, e] : intervals) {
      if (a < c && c <= b && b < e) return std::nullopt;  // crossing intervals
    }
  }
  // Children of [lo, hi]: maximal node intervals strictly inside, and uncovered leaves.
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::optional<PlaneTree> {
    std::vector<PlaneTree> children;
    for (std::size_t x = lo; x <= hi;) {
      std::size_t best = x;
      for (const auto& [a, b] : intervals) {
        if (a == x && b <= hi && !(a == lo && b == hi)) best = std::max(best, b);
      }
      if (best == x) {
        children.push_back(PlaneTree::leaf());
      } else {
        auto sub = self(self, x, best);
        if (!sub) return std::nullopt;
        children.push_back(std::move(*sub));
      }
      x = best + 1;
    }
    if (children.size() < 2) return std::nullopt;
    return PlaneTree::node(std::move(children));
  };
  auto tree = rec(rec, 0, d - 1);
  if (!tree || triples_of(*tree) != triples) return std::nullopt;
  return tree;
}

std::vector<PlaneTree> enumerate_reduced(std::size_t n) {
  static std::recursive_mutex mutex;
  static std::map<std::size_t, std::vector<PlaneTree>> memo;
  std::lock_guard lock(mutex);
  if (n == 0) return {PlaneTree::empty()};
  if (n == 1) return {PlaneTree::leaf()};
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<PlaneTree> out;
  // Children leaf counts: compositions of n into at least two parts.
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      if (parts.size() < 2) return;
      std::vector<std::vector<PlaneTree>> options;
      for (auto p : parts) options.push_back(enumerate_reduced(p));
      std::vector<std::size_t> pick(parts.size(), 0);
      while (true) {
        std::vector<PlaneTree> children;
        for (std::size_t i = 0; i < parts.size(); ++i) children.push_back(options[i][pick[i]]);
        out.push_back(PlaneTree::node(std::move(children)));
        std::size_t i = parts.size();
        while (i > 0 && ++pick[i - 1] == options[i - 1].size()) pick[--i] = 0;
        if (i == 0) break;
      }
      return;
    }
    for (std::size_t p = 1; p <= remaining; ++p) {
      if (p == n) continue;
      parts.push_back(p);
      self(self, remaining - p);
      parts.pop_back();
    }
  };
  rec(rec, n);
  memo.emplace(n, out);
  return out;
}

std::vector<LeafAddress> embedding_sample(std::size_t n, std::size_t depth_budget) {
  std::set<LeafAddress> all;
  for (const auto& t : enumerate_reduced(n)) {
    if (t.height() > depth_budget) continue;
    for (auto& a : embed(t)) all.insert(std::move(a));
  }
  return {all.begin(), all.end()};
}

std::vector<LeafAddress> truncated_sample(std::size_t depth_budget, std::uint32_t max_index) {
  std::vector<LeafAddress> out;
  LeafAddress prefix;
  auto rec = [&](auto&& self) -> void {
    for (std::uint32_t i = 1; i <= max_index; ++i) {
      prefix.push_back(i);
      if (i % 2 == 1) {
        out.push_back(prefix);
      } else if (prefix.size() < depth_budget) {
        self(self);
      }
      prefix.pop_back();
    }
  };
  if (depth_budget > 0) rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

PlanarProfile planar_profile(std::size_t n, const std::vector<LeafAddress>& sample) {
  PlanarProfile r;
  r.n = n;
  r.sample_size = sample.size();
  r.expected = enumerate_reduced(n).size();
  std::set<std::string> seen;
  for_each_subset(sample.size(), n, [&](std::span<const Element> s) {
    std::vector<LeafAddress> A;
    for (Element i : s) A.push_back(sample[i]);
    seen.insert(contract(std::move(A)).str());
  });
  r.count = seen.size();
  if (r.count < r.expected) {
    r.diagnostic = "sample of " + std::to_string(sample.size()) + " leaves realizes only " + std::to_string(r.count) +
                   " of the " + std::to_string(r.expected) + " reduced trees with " + std::to_string(n) +
                   " leaves; deepen the sample";
  }
  return r;
}

PlanarProfile planar_profile(std::size_t n, std::optional<std::size_t> depth_budget) {
  const std::size_t depth = depth_budget.value_or(std::max<std::size_t>(n, 2) - 1);
  return planar_profile(n, embedding_sample(n, depth));
}

FiniteRelStruct leaf_structure(std::vector<LeafAddress> sample) {
  for (const auto& a : sample) check_address(a);
  std::sort(sample.begin(), sample.end());
  if (std::adjacent_find(sample.begin(), sample.end()) != sample.end()) throw InputError("duplicate leaf address");
  const Signature sig({{"lt", 2}, {"rho_right", 3}, {"rho_flat", 3}, {"rho_left", 3}});
  const std::map<std::string, std::size_t> symbol_of{{"(o,(o,o))", 1}, {"(o,o,o)", 2}, {"((o,o),o)", 3}};
  std::vector<std::vector<Tuple>> rel(4);
  const auto n = static_cast<Element>(sample.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      rel[0].push_back({x, y});
      for (Element z = y + 1; z < n; ++z) {
        rel[symbol_of.at(contract({sample[x], sample[y], sample[z]}).str())].push_back({x, y, z});
      }
    }
  }
  return FiniteRelStruct(sig, sample.size(), rel);
}

BigInt shuffle_constant(const PlaneTree& tau1, const PlaneTree& tau2, const PlaneTree& tau) {
  const std::size_t n1 = tau1.is_empty() ? 0 : tau1.leaves();
  const std::size_t n2 = tau2.is_empty() ? 0 : tau2.leaves();
  const std::size_t n = tau.is_empty() ? 0 : tau.leaves();
  if (n1 + n2 != n) throw InputError("shuffle constant: leaf counts do not add up");
  const auto A = embed(tau);
  const std::string want1 = reduce(tau1).str(), want2 = reduce(tau2).str();
  BigInt count = 0;
  for_each_subset(n, n1, [&](std::span<const Element> s) {
    std::vector<LeafAddress> A1, A2;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (k < s.size() && s[k] == i) {
        A1.push_back(A[i]);
        ++k;
      } else {
        A2.push_back(A[i]);
      }
    }
    if (contract(std::move(A1)).str() == want1 && contract(std::move(A2)).str() == want2) ++count;
  });
  return count;
}

namespace {

bool separates(const LeafAddress& a, const LeafAddress& b, const LeafAddress& c, const LeafAddress& d) {
  return contract({a, c, d}) != contract({b, c, d});
}

// Leaves near the paths of a and b: for every prefix, children up to a few
// indices past the path, and their first few leaves one level down.
std::vector<LeafAddress> neighborhood(const LeafAddress& a, const LeafAddress& b) {
  std::set<LeafAddress> out;
  for (const auto* x : {&a, &b}) {
    for (std::size_t len = 0; len < x->size(); ++len) {
      LeafAddress prefix(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(len));
      const std::uint32_t top = (*x)[len] + 4;
      for (std::uint32_t i = 1; i <= top; ++i) {
        LeafAddress child = prefix;
        child.push_back(i);
        if (i % 2 == 1) {
          out.insert(child);
        } else {
          for (std::uint32_t j = 1; j <= 5; j += 2) {
            LeafAddress leaf = child;
            leaf.push_back(j);
            out.insert(leaf);
          }
        }
      }
    }
  }
  out.erase(a);
  out.erase(b);
  return {out.begin(), out.end()};
}

std::optional<PairWitness> construct_witness(const LeafAddress& a, const LeafAddress& b) {
  // A copy of T strictly between a and b in infix order: an even index e at some
  // depth whose whole subtree lies between them.
  std::size_t p = 0;
  while (p < a.size() && p < b.size() && a[p] == b[p]) ++p;
  std::vector<LeafAddress> copies;
  auto at = [&](const LeafAddress& x, std::size_t len, std::uint32_t e) {
    LeafAddress q(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len));
    q.push_back(e);
    return q;
  };
  for (std::uint32_t e = a[p] + 1; e < b[p]; ++e) {
    if (e % 2 == 0) copies.push_back(at(a, p, e));
  }
  for (std::size_t t = p + 1; t < a.size(); ++t) copies.push_back(at(a, t, a[t] + (a[t] % 2 == 1 ? 1 : 2)));
  for (std::size_t t = p + 1; t < b.size(); ++t) {
    if (b[t] > 2) copies.push_back(at(b, t, (b[t] - 1) % 2 == 0 ? b[t] - 1 : b[t] - 2));
  }
  for (const auto& q : copies) {
    LeafAddress c = q, d = q;
    c.push_back(1);
    d.push_back(3);
    if (c != a && c != b && d != a && d != b && separates(a, b, c, d)) return PairWitness{a, b, c, d};
  }
  const auto near = neighborhood(a, b);
  for (std::size_t i = 0; i < near.size(); ++i) {
    for (std::size_t j = i + 1; j < near.size(); ++j) {
      if (separates(a, b, near[i], near[j])) return PairWitness{a, b, near[i], near[j]};
    }
  }
  return std::nullopt;
}

}  // namespace

MonopartReport no_pair_monopart(std::vector<LeafAddress> sample) {
  for (const auto& a : sample) check_address(a);
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  if (sample.size() < 4) throw InputError("no_pair_monopart needs a sample of at least 4 leaves");
  MonopartReport r;
  std::set<LeafAddress> extended(sample.begin(), sample.end());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      ++r.pairs;
      const auto& a = sample[i];
      const auto& b = sample[j];
      std::optional<PairWitness> w;
      for (std::size_t x = 0; x < sample.size() && !w; ++x) {
        for (std::size_t y = x + 1; y < sample.size() && !w; ++y) {
          if (x == i || x == j || y == i || y == j) continue;
          if (separates(a, b, sample[x], sample[y])) w = PairWitness{a, b, sample[x], sample[y]};
        }
      }
      if (!w) {
        w = construct_witness(a, b);
        if (!w) {
          r.ok = false;
          continue;
        }
        ++r.extended;
        extended.insert(w->c);
        extended.insert(w->d);
      }
      r.witnesses.push_back(std::move(*w));
    }
  }
  r.sample.assign(extended.begin(), extended.end());
  return r;
}

}  // namespace agealg
