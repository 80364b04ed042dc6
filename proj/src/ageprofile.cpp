#include "agealg/ageprofile.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "agealg/error.hpp"
#include "agealg/monomial_order.hpp"

namespace agealg {

TypeRegistry::TypeRegistry(BlockTemplate t, unsigned threads)
    : typer_(std::move(t)), threads_(std::max(1u, threads)) {
  require_valid(typer_.block_template());
}

void TypeRegistry::build(std::size_t D) {
  while (by_degree_.size() <= D) {
    const std::size_t n = by_degree_.size();
    const auto comps = compositions_of_degree(typer_.block_template(), n);
    if (threads_ > 1 && comps.size() > 1) {
      // Warm the typer in parallel; grouping below is sequential and deterministic.
      std::vector<std::thread> pool;
      const unsigned workers = std::min<unsigned>(threads_, static_cast<unsigned>(comps.size()));
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < comps.size(); i += workers) typer_.type_of(comps[i]);
        });
      }
      for (auto& th : pool) th.join();
    }
    std::vector<TypeInfo> infos;
    for (const auto& c : comps) {
      const IsoType& type = typer_.type_of(c);
      auto [it, inserted] = lookup_.emplace(type, TypeId{n, infos.size()});
      if (inserted) {
        infos.push_back({type, {c}, c});
      } else {
        if (it->second.degree != n) throw ConsistencyError("type code reused across degrees");
        auto& info = infos[it->second.index];
        info.realizations.push_back(c);
        if (compare_monomials(c, info.leading) > 0) info.leading = c;
      }
      index_of_.emplace(c, it->second.index);
    }
    composition_counts_.push_back(comps.size());
    by_degree_.push_back(std::move(infos));
  }
}

const std::vector<TypeInfo>& TypeRegistry::types(std::size_t n) {
  build(n);
  return by_degree_[n];
}

const TypeInfo& TypeRegistry::info(const TypeId& id) {
  const auto& ts = types(id.degree);
  if (id.index >= ts.size()) throw InputError("type index out of range");
  return ts[id.index];
}

TypeId TypeRegistry::id_of(const Composition& d) {
  if (d.blocks() != block_template().block_count()) throw InputError("composition has wrong number of blocks");
  build(d.degree());
  auto it = index_of_.find(d);
  if (it == index_of_.end()) throw InputError("composition " + d.str() + " exceeds a block capacity");
  return {d.degree(), it->second};
}

std::optional<TypeId> TypeRegistry::find(const IsoType& type) {
  build(type.degree);
  auto it = lookup_.find(type);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t TypeRegistry::composition_count(std::size_t n) {
  build(n);
  return composition_counts_[n];
}

std::size_t profile(const BlockTemplate& t, std::size_t n) {
  TypeRegistry reg(t);
  return reg.types(n).size();
}

ProfileReport profile_series(TypeRegistry& reg, std::size_t D) {
  std::vector<BigInt> v;
  for (std::size_t n = 0; n <= D; ++n) v.emplace_back(reg.types(n).size());
  ProfileReport r{IntSeries(std::move(v)), true};
  r.nondecreasing = r.series.nondecreasing();
  return r;
}

std::map<std::pair<std::size_t, std::size_t>, BigInt> split_counts(TypeRegistry& reg, const Composition& d,
                                                                   std::size_t m) {
  std::map<std::pair<std::size_t, std::size_t>, BigInt> out;
  if (m > d.degree()) return out;
  reg.build(d.degree());
  for (const auto& c : sub_compositions(d)) {
    if (c.degree() != m) continue;
    std::vector<std::uint32_t> rest(d.blocks());
    BigInt ways = 1;
    for (std::size_t x = 0; x < d.blocks(); ++x) {
      rest[x] = d[x] - c[x];
      ways *= binomial(d[x], c[x]);
    }
    out[{reg.id_of(c).index, reg.id_of(Composition(std::move(rest))).index}] += ways;
  }
  return out;
}

BigInt structure_constant(TypeRegistry& reg, const TypeId& tau1, const TypeId& tau2, const TypeId& tau) {
  if (tau.degree != tau1.degree + tau2.degree) throw InputError("structure constant: degrees do not add up");
  const auto& info = reg.info(tau);
  reg.info(tau1);
  reg.info(tau2);
  auto on = [&](const Composition& d) {
    const auto table = split_counts(reg, d, tau1.degree);
    auto it = table.find({tau1.index, tau2.index});
    return it == table.end() ? BigInt(0) : it->second;
  };
  const BigInt c = on(info.realizations.front());
  if (info.realizations.size() > 1 && on(info.realizations.back()) != c) {
    throw ConsistencyError("structure constant depends on the representative of " + info.realizations.front().str());
  }
  return c;
}

BigInt structure_constant(TypeRegistry& reg, const IsoType& tau1, const IsoType& tau2, const IsoType& tau) {
  if (tau.degree != tau1.degree + tau2.degree) throw InputError("structure constant: degrees do not add up");
  auto resolve = [&](const IsoType& t) {
    auto id = reg.find(t);
    if (!id) throw InputError("type " + t.hex() + " is not realized by the template");
    return *id;
  };
  return structure_constant(reg, resolve(tau1), resolve(tau2), resolve(tau));
}

OrbitSum unit_orbit_sum(TypeRegistry& reg) { return {{reg.types(0).at(0).type, BigInt(1)}}; }

OrbitSum e_orbit_sum(TypeRegistry& reg) {
  OrbitSum e;
  for (const auto& info : reg.types(1)) e[info.type] = 1;
  return e;
}

namespace {

// Coefficients indexed by type index at a single degree.
std::pair<std::size_t, std::map<std::size_t, BigInt>> resolve_homogeneous(TypeRegistry& reg, const OrbitSum& o) {
  std::map<std::size_t, BigInt> coeffs;
  std::optional<std::size_t> degree;
  for (const auto& [type, c] : o) {
    if (c == 0) continue;
    if (degree && *degree != type.degree) throw InputError("orbit sum is not homogeneous");
    degree = type.degree;
    auto id = reg.find(type);
    if (!id) throw InputError("type " + type.hex() + " is not realized by the template");
    coeffs[id->index] += c;
  }
  return {degree.value_or(0), std::move(coeffs)};
}

}  // namespace

OrbitSum orbit_product(TypeRegistry& reg, const OrbitSum& a, const OrbitSum& b) {
  const auto [da, ca] = resolve_homogeneous(reg, a);
  const auto [db, cb] = resolve_homogeneous(reg, b);
  OrbitSum out;
  if (ca.empty() || cb.empty()) return out;
  const auto& targets = reg.types(da + db);
  for (const auto& info : targets) {
    BigInt total = 0;
    for (const auto& [pair, count] : split_counts(reg, info.realizations.front(), da)) {
      auto ia = ca.find(pair.first);
      auto ib = cb.find(pair.second);
      if (ia != ca.end() && ib != cb.end()) total += ia->second * ib->second * count;
    }
    if (total != 0) out[info.type] = total;
  }
  return out;
}

std::vector<std::vector<BigInt>> mult_by_e_matrix(TypeRegistry& reg, std::size_t n) {
  const auto& upper = reg.types(n + 1);
  const std::size_t cols = reg.types(n).size();
  std::vector<std::vector<BigInt>> m(upper.size(), std::vector<BigInt>(cols, 0));
  for (std::size_t r = 0; r < upper.size(); ++r) {
    // Remove one element from the representative: d_x ways to pick it in block x.
    const Composition& d = upper[r].realizations.front();
    for (std::size_t x = 0; x < d.blocks(); ++x) {
      if (d[x] == 0) continue;
      Composition smaller = d;
      --smaller[x];
      m[r][reg.id_of(smaller).index] += d[x];
    }
  }
  return m;
}

std::size_t mult_by_e_rank(TypeRegistry& reg, std::size_t n) { return rational_rank(mult_by_e_matrix(reg, n)); }

KernelReport kernel_elements_bounded(const BlockTemplate& t, std::size_t D) {
  KernelReport report{{}, D};
  TypeRegistry reg(t);
  for (std::size_t b = 0; b < t.block_count(); ++b) {
    const Block& block = t.blocks()[b];
    if (block.infinite()) continue;
    // Removing any element of a chain block leaves exactly the compositions with d_b < capacity.
    bool lost = false;
    for (std::size_t n = 0; n <= D && !lost; ++n) {
      std::set<std::size_t> kept;
      for (const auto& c : compositions_of_degree(t, n)) {
        if (c[b] < block.capacity) kept.insert(reg.id_of(c).index);
      }
      lost = kept.size() < reg.types(n).size();
    }
    if (!lost) continue;
    for (std::size_t i = 0; i < block.capacity; ++i) report.elements.push_back({b, i});
  }
  return report;
}

}  // namespace agealg
