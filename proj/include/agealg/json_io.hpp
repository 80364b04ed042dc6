#pragma once

// JSON encodings of structures, templates, partitions, Hilbert forms and
// quasi-polynomials. Integers that do not fit in 64 bits are written as
// decimal strings; readers accept either form.

#include <string>
#include <string_view>

#include "json.hpp"

#include "agealg/block_template.hpp"
#include "agealg/hilbert.hpp"
#include "agealg/monodec.hpp"
#include "agealg/numeric.hpp"
#include "agealg/relcore.hpp"

namespace agealg {

using Json = nlohmann::json;

/// InputError on malformed text.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);

Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);
/// [numerator, denominator]
Json rational_to_json(const Rational& v);

/// {"signature":[{"name":..,"arity":..}], "size":n, "relations":{"name":[[i,..],..]}}
Json structure_to_json(const FiniteRelStruct& s);
FiniteRelStruct structure_from_json(const Json& j);

/// {"signature":[..], "blocks":[{"name":..,"capacity":"inf"|n}],
///  "accepted":{"sym":[{"blocks":[..],"ranks":[..]}]}}
Json template_to_json(const BlockTemplate& t);
BlockTemplate template_from_json(const Json& j);

/// Lists of element indices.
Json partition_to_json(const Partition& p);
/// Lists of block names.
Json components_to_json(const BlockTemplate& t, const std::vector<std::vector<std::size_t>>& classes);

/// {"numerator":[c0,c1,..], "denominator":[n1,..]}
Json hilbert_to_json(const HilbertForm& h);
HilbertForm hilbert_from_json(const Json& j);

/// {"period":L, "n_min":m, "residues":[[[num,den],..],..]}
Json quasi_polynomial_to_json(const QuasiPolynomial& q);

}  // namespace agealg
