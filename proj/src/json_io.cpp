#include "agealg/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "agealg/error.hpp"

namespace agealg {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str());
}

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& v) {
  return Json::array({bigint_to_json(numerator(v)), bigint_to_json(denominator(v))});
}

namespace {

template <typename T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string(what) + ": bad \"" + key + "\"");
  }
}

Json signature_to_json(const Signature& sig) {
  Json out = Json::array();
  for (const auto& s : sig.symbols()) out.push_back({{"name", s.name}, {"arity", s.arity}});
  return out;
}

Signature signature_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("signature must be an array");
  std::vector<Symbol> symbols;
  for (const auto& s : j) symbols.push_back({field<std::string>(s, "name", "symbol"), field<int>(s, "arity", "symbol")});
  try {
    return Signature(std::move(symbols));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Json structure_to_json(const FiniteRelStruct& s) {
  Json rel = Json::object();
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    Json tuples = Json::array();
    for (const auto& t : s.tuples(i)) tuples.push_back(t);
    rel[s.signature().name(i)] = std::move(tuples);
  }
  return {{"signature", signature_to_json(s.signature())}, {"size", s.size()}, {"relations", rel}};
}

FiniteRelStruct structure_from_json(const Json& j) {
  const Signature sig = signature_from_json(field<Json>(j, "signature", "structure"));
  const auto size = field<std::size_t>(j, "size", "structure");
  const Json rel = j.contains("relations") ? j.at("relations") : Json::object();
  if (!rel.is_object()) throw InputError("structure: \"relations\" must be an object");
  std::vector<std::vector<Tuple>> relations(sig.size());
  for (const auto& [name, tuples] : rel.items()) {
    const auto s = sig.index_of(name);
    if (!s) throw InputError("structure: relation '" + name + "' is not in the signature");
    try {
      relations[*s] = tuples.get<std::vector<Tuple>>();
    } catch (const Json::exception&) {
      throw InputError("structure: relation '" + name + "' must be a list of index lists");
    }
  }
  return FiniteRelStruct(sig, size, relations);
}

Json template_to_json(const BlockTemplate& t) {
  Json blocks = Json::array();
  for (const auto& b : t.blocks()) {
    blocks.push_back({{"name", b.name}, {"capacity", b.infinite() ? Json("inf") : Json(b.capacity)}});
  }
  Json accepted = Json::object();
  for (std::size_t s = 0; s < t.signature().size(); ++s) {
    Json patterns = Json::array();
    for (const auto& p : t.accepted(s)) patterns.push_back({{"blocks", p.blocks}, {"ranks", p.ranks}});
    accepted[t.signature().name(s)] = std::move(patterns);
  }
  return {{"signature", signature_to_json(t.signature())}, {"blocks", blocks}, {"accepted", accepted}};
}

BlockTemplate template_from_json(const Json& j) {
  const Signature sig = signature_from_json(field<Json>(j, "signature", "template"));
  const auto blocks_json = field<Json>(j, "blocks", "template");
  if (!blocks_json.is_array()) throw InputError("template: \"blocks\" must be an array");
  std::vector<Block> blocks;
  for (const auto& b : blocks_json) {
    Block block{field<std::string>(b, "name", "block"), kInfinite};
    const Json cap = b.contains("capacity") ? b.at("capacity") : Json("inf");
    if (cap.is_string() && cap.get<std::string>() == "inf") {
      block.capacity = kInfinite;
    } else if (cap.is_number_unsigned()) {
      block.capacity = cap.get<std::size_t>();
    } else {
      throw InputError("block '" + block.name + "': capacity must be \"inf\" or a natural number");
    }
    blocks.push_back(std::move(block));
  }
  std::vector<std::vector<TuplePattern>> accepted(sig.size());
  const Json acc = j.contains("accepted") ? j.at("accepted") : Json::object();
  if (!acc.is_object()) throw InputError("template: \"accepted\" must be an object");
  for (const auto& [name, patterns] : acc.items()) {
    const auto s = sig.index_of(name);
    if (!s) throw InputError("template: accepted patterns for unknown symbol '" + name + "'");
    if (!patterns.is_array()) throw InputError("template: patterns of '" + name + "' must be an array");
    for (const auto& p : patterns) {
      accepted[*s].push_back({field<std::vector<std::uint32_t>>(p, "blocks", "pattern"),
                              field<std::vector<std::uint32_t>>(p, "ranks", "pattern")});
    }
  }
  BlockTemplate t(sig, std::move(blocks), std::move(accepted));
  require_valid(t);
  return t;
}

Json partition_to_json(const Partition& p) { return Json(p.blocks()); }

Json components_to_json(const BlockTemplate& t, const std::vector<std::vector<std::size_t>>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) {
    Json names = Json::array();
    for (auto x : c) names.push_back(t.blocks().at(x).name);
    out.push_back(std::move(names));
  }
  return out;
}

Json hilbert_to_json(const HilbertForm& h) {
  Json num = Json::array();
  for (const auto& c : h.numerator.coefficients()) num.push_back(bigint_to_json(c));
  return {{"numerator", num}, {"denominator", h.denominator}};
}

HilbertForm hilbert_from_json(const Json& j) {
  const auto num = field<Json>(j, "numerator", "Hilbert form");
  if (!num.is_array()) throw InputError("Hilbert form: numerator must be an array");
  std::vector<BigInt> coeffs;
  for (const auto& c : num) coeffs.push_back(bigint_from_json(c));
  auto den = field<std::vector<std::size_t>>(j, "denominator", "Hilbert form");
  for (auto d : den) {
    if (d == 0) throw InputError("Hilbert form: denominator degrees must be positive");
  }
  std::sort(den.begin(), den.end());
  return {IntPoly(std::move(coeffs)), std::move(den)};
}

Json quasi_polynomial_to_json(const QuasiPolynomial& q) {
  Json residues = Json::array();
  for (const auto& r : q.residues) {
    Json coeffs = Json::array();
    for (const auto& c : r) coeffs.push_back(rational_to_json(c));
    residues.push_back(std::move(coeffs));
  }
  return {{"period", q.period}, {"n_min", q.n_min}, {"residues", residues}};
}

}  // namespace agealg
