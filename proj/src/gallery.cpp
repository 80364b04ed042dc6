#include "agealg/gallery.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "agealg/error.hpp"

namespace agealg {

namespace {

TuplePattern pattern(std::vector<std::uint32_t> blocks, std::vector<std::uint32_t> ranks) {
  return TuplePattern{std::move(blocks), std::move(ranks)}.normalized();
}

std::vector<Block> infinite_blocks(const std::string& prefix, std::size_t k) {
  std::vector<Block> blocks;
  for (std::size_t i = 1; i <= k; ++i) blocks.push_back({prefix + std::to_string(i), kInfinite});
  return blocks;
}

BlockTemplate checked(BlockTemplate t) {
  require_valid(t);
  return t;
}

void require_positive(std::size_t k, const char* what) {
  if (k == 0) throw InputError(std::string(what) + ": k must be >= 1");
}

// Every normalized rank assignment for coordinates grouped by block.
std::vector<TuplePattern> all_patterns_over(const std::vector<std::uint32_t>& blocks) {
  const std::size_t a = blocks.size();
  std::set<TuplePattern> out;
  std::vector<std::uint32_t> ranks(a, 0);
  while (true) {
    out.insert(TuplePattern{blocks, ranks}.normalized());
    std::size_t i = 0;
    while (i < a && ++ranks[i] == a) ranks[i++] = 0;
    if (i == a) break;
  }
  return {out.begin(), out.end()};
}

}  // namespace

BlockTemplate clique_sum(std::size_t k) {
  require_positive(k, "clique_sum");
  std::vector<TuplePattern> edges;
  for (std::uint32_t i = 0; i < k; ++i) {
    edges.push_back(pattern({i, i}, {0, 1}));
    edges.push_back(pattern({i, i}, {1, 0}));
  }
  return checked(BlockTemplate(Signature({{"E", 2}}), infinite_blocks("K", k), {edges}));
}

BlockTemplate coclique() {
  return checked(BlockTemplate(Signature({{"E", 2}}), {{"V", kInfinite}}, {{}}));
}

BlockTemplate clique_plus_coclique() {
  return checked(BlockTemplate(Signature({{"E", 2}}), {{"clique", kInfinite}, {"coclique", kInfinite}},
                               {{pattern({0, 0}, {0, 1}), pattern({0, 0}, {1, 0})}}));
}

BlockTemplate wheel_plus_coclique() {
  return checked(BlockTemplate(Signature({{"E", 2}}),
                               {{"leaves", kInfinite}, {"coclique", kInfinite}, {"center", 1}},
                               {{pattern({0, 2}, {0, 0}), pattern({2, 0}, {0, 0})}}));
}

BlockTemplate sym(std::size_t k) {
  require_positive(k, "sym");
  std::vector<TuplePattern> order;
  for (std::uint32_t i = 0; i < k; ++i) order.push_back(pattern({i, i}, {0, 1}));
  return checked(BlockTemplate(Signature({{"L", 2}}), infinite_blocks("C", k), {order}));
}

BlockTemplate qsym(std::size_t k) {
  require_positive(k, "qsym");
  std::vector<TuplePattern> arcs;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = i + 1; j < k; ++j) arcs.push_back(pattern({i, j}, {0, 0}));
  }
  return checked(BlockTemplate(Signature({{"rho", 2}}), infinite_blocks("x", k), {arcs}));
}

BlockTemplate rqsym(std::size_t k, std::size_t r) {
  require_positive(k, "rqsym");
  if (r == 0) return sym(k);
  const BlockTemplate base = sym(k);
  std::vector<std::uint32_t> perm_x(r);
  std::iota(perm_x.begin(), perm_x.end(), 0);
  std::vector<std::vector<std::uint32_t>> perms;
  do {
    perms.push_back(perm_x);
  } while (std::next_permutation(perm_x.begin(), perm_x.end()));
  std::vector<TuplePattern> rho;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = i + 1; j < k; ++j) {
      std::vector<std::uint32_t> blocks(r, i);
      blocks.insert(blocks.end(), r, j);
      for (const auto& px : perms) {
        for (const auto& py : perms) {
          std::vector<std::uint32_t> ranks = px;
          ranks.insert(ranks.end(), py.begin(), py.end());
          rho.push_back(pattern(blocks, ranks));
        }
      }
    }
  }
  return checked(BlockTemplate(Signature({{"L", 2}, {"rho", static_cast<int>(2 * r)}}), base.blocks(),
                               {base.accepted(0), rho}));
}

BlockTemplate groupoid_example() {
  return checked(BlockTemplate(Signature({{"A", 2}, {"M", 1}}), infinite_blocks("b", 3),
                               {{pattern({0, 1}, {0, 0}), pattern({0, 2}, {0, 0})}, {pattern({2}, {0})}}));
}

BlockTemplate lex_sum(const FiniteRelStruct& quotient, const std::vector<BlockKind>& kinds,
                      const std::vector<std::size_t>& capacities, const std::string& kind_symbol) {
  const std::size_t nq = quotient.size();
  if (nq == 0) throw InputError("lex_sum: empty quotient");
  if (kinds.size() != nq || capacities.size() != nq) {
    throw InputError("lex_sum: need one block kind and capacity per quotient element");
  }
  const auto kind_index = quotient.signature().index_of(kind_symbol);
  if (!kind_index || quotient.signature().arity(*kind_index) != 2) {
    throw InputError("lex_sum: kind symbol '" + kind_symbol + "' must be a binary symbol of the quotient");
  }
  std::vector<Block> blocks;
  for (std::size_t q = 0; q < nq; ++q) blocks.push_back({"q" + std::to_string(q), capacities[q]});
  std::vector<std::vector<TuplePattern>> accepted(quotient.signature().size());
  for (std::size_t s = 0; s < quotient.signature().size(); ++s) {
    for (std::size_t i = 0; i < quotient.tuple_count(s); ++i) {
      auto t = quotient.tuple(s, i);
      std::vector<std::uint32_t> bl(t.begin(), t.end());
      const bool diagonal = std::all_of(bl.begin(), bl.end(), [&](std::uint32_t b) { return b == bl.front(); });
      if (diagonal && bl.size() > 1) continue;
      for (auto& p : all_patterns_over(bl)) {
        bool fits = true;
        for (std::size_t c = 0; c < p.arity(); ++c) {
          fits = fits && (capacities[p.blocks[c]] == kInfinite || p.ranks[c] < capacities[p.blocks[c]]);
        }
        if (fits) accepted[s].push_back(std::move(p));
      }
    }
  }
  for (std::uint32_t q = 0; q < nq; ++q) {
    if (capacities[q] != kInfinite && capacities[q] < 2) continue;
    switch (kinds[q]) {
      case BlockKind::Clique:
        accepted[*kind_index].push_back(pattern({q, q}, {0, 1}));
        accepted[*kind_index].push_back(pattern({q, q}, {1, 0}));
        break;
      case BlockKind::Chain:
        accepted[*kind_index].push_back(pattern({q, q}, {0, 1}));
        break;
      case BlockKind::Coclique:
        break;
    }
  }
  return checked(BlockTemplate(quotient.signature(), std::move(blocks), std::move(accepted)));
}

BlockTemplate c3_chains() {
  FiniteRelStruct cycle(Signature({{"T", 2}}), 3, {{{0, 1}, {1, 2}, {2, 0}}});
  return lex_sum(cycle, {BlockKind::Chain, BlockKind::Chain, BlockKind::Chain}, {kInfinite, kInfinite, kInfinite},
                 "T");
}

namespace {

std::vector<std::size_t> parse_params(std::string_view name, std::string_view& base) {
  std::vector<std::size_t> params;
  const auto colon = name.find(':');
  base = name.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  while (colon != std::string_view::npos) {
    const auto next = rest.find(':');
    const auto piece = rest.substr(0, next);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
      throw InputError("bad builtin parameter in '" + std::string(name) + "'");
    }
    params.push_back(value);
    if (next == std::string_view::npos) break;
    rest = rest.substr(next + 1);
  }
  return params;
}

}  // namespace

BlockTemplate builtin_template(std::string_view name) {
  std::string_view base;
  const auto params = parse_params(name, base);
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw InputError("builtin '" + std::string(base) + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  if (base == "coclique") return want(0), coclique();
  if (base == "clique") return want(0), clique_sum(1);
  if (base == "clique_sum") return want(1), clique_sum(params[0]);
  if (base == "sym") return want(1), sym(params[0]);
  if (base == "qsym") return want(1), qsym(params[0]);
  if (base == "rqsym") return want(2), rqsym(params[0], params[1]);
  if (base == "clique_plus_coclique") return want(0), clique_plus_coclique();
  if (base == "wheel_plus_coclique") return want(0), wheel_plus_coclique();
  if (base == "groupoid") return want(0), groupoid_example();
  if (base == "c3_chains") return want(0), c3_chains();
  throw InputError("unknown builtin '" + std::string(name) + "'");
}

std::vector<GalleryEntry> builtin_catalog() {
  return {
      {"coclique", "infinite independent set; profile 1, series 1/(1-Z)"},
      {"clique", "infinite clique; same age algebra as the coclique"},
      {"clique_sum:k", "direct sum of k infinite cliques; symmetric polynomials in k variables"},
      {"sym:k", "direct sum of k infinite chains; symmetric polynomials in k variables"},
      {"qsym:k", "k blocks ordered by a binary relation; quasi-symmetric polynomials in k variables"},
      {"rqsym:k:r", "sym:k plus a 2r-ary relation; r-quasi-symmetric polynomials (r = 0 gives sym:k)"},
      {"clique_plus_coclique", "infinite clique plus infinite independent set; (1+Z^3)/((1-Z)(1-Z^2))"},
      {"wheel_plus_coclique", "infinite wheel plus infinite independent set; age algebra not finitely generated"},
      {"groupoid", "realization of the groupoid generated by 1 -> 2 on {1,2,3}; not Cohen-Macaulay"},
      {"c3_chains", "3-cycle tournament with each vertex replaced by an infinite chain"},
  };
}

std::vector<std::string> verification_gallery() {
  return {"coclique", "clique", "sym:1", "sym:2", "sym:3", "sym:4", "clique_sum:2", "clique_plus_coclique",
          "wheel_plus_coclique", "qsym:2", "qsym:3", "rqsym:2:2", "groupoid", "c3_chains"};
}

}  // namespace agealg
