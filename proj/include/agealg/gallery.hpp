#pragma once

// Builders for the standard example templates, and the builtin-name registry
// used by the command line ("name", "name:k", "name:k:r").

#include <string>
#include <string_view>
#include <vector>

#include "agealg/block_template.hpp"

namespace agealg {

enum class BlockKind { Clique, Coclique, Chain };

/// Direct sum of k infinite cliques (symbol E).
BlockTemplate clique_sum(std::size_t k);
/// One infinite independent set (symbol E, no edges).
BlockTemplate coclique();
BlockTemplate clique_plus_coclique();
/// Infinite wheel (center joined to infinitely many leaves) plus an infinite independent set.
/// Blocks: leaves, coclique, center (capacity 1).
BlockTemplate wheel_plus_coclique();
/// Direct sum of k infinite chains (symbol L); profile counts partitions into at most k parts.
BlockTemplate sym(std::size_t k);
/// k blocks with a binary relation rho from every element of block i to every element of block j > i.
BlockTemplate qsym(std::size_t k);
/// sym(k) plus a 2r-ary relation rho: r distinct elements of a block followed by r distinct
/// elements of a later block. For r = 0 no relation is added and the result is sym(k).
BlockTemplate rqsym(std::size_t k, std::size_t r);
/// Three infinite blocks b1, b2, b3; arcs A from b1 to b2 and from b1 to b3; unary mark M on b3.
/// Its degree-n type counts match the monomial orbits of the groupoid generated by 1 -> 2.
BlockTemplate groupoid_example();
/// Lexicographic sum: quotient element q becomes block q of the given kind and capacity.
/// Quotient tuples (not all coordinates equal) are accepted for every pattern over their blocks;
/// the kind structure inside each block uses `kind_symbol`, which must be binary.
BlockTemplate lex_sum(const FiniteRelStruct& quotient, const std::vector<BlockKind>& kinds,
                      const std::vector<std::size_t>& capacities, const std::string& kind_symbol);
/// Tournament obtained by replacing each vertex of the 3-cycle by an infinite chain.
BlockTemplate c3_chains();

struct GalleryEntry {
  std::string builtin;   // e.g. "sym:3"
  std::string realizes;  // one-line description of the example
};

/// Parses a builtin name such as "coclique", "sym:3" or "rqsym:2:1". Throws InputError.
BlockTemplate builtin_template(std::string_view name);

/// Builtin names available to the command line, with descriptions.
std::vector<GalleryEntry> builtin_catalog();

/// The templates exercised by the verification suites.
std::vector<std::string> verification_gallery();

}  // namespace agealg
