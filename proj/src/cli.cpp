#include "agealg/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "agealg/ageprofile.hpp"
#include "agealg/block_template.hpp"
#include "agealg/error.hpp"
#include "agealg/gallery.hpp"
#include "agealg/hilbert.hpp"
#include "agealg/json_io.hpp"
#include "agealg/monodec.hpp"
#include "agealg/planar.hpp"

namespace agealg {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string builtin;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> gen_bound;
  std::optional<std::size_t> depth;
  std::size_t guard = kDefaultGuard;
  std::size_t dmax = kDefaultFatnessBound;
  unsigned threads = 1;
  std::string format = "json";

  bool text() const { return format == "text"; }
  std::size_t degree_or(std::size_t fallback) const { return degree.value_or(fallback); }
};

struct Source {
  std::optional<BlockTemplate> tmpl;
  std::optional<FiniteRelStruct> structure;
  Json description;
};

Source load_source(const RunConfig& cfg) {
  if (!cfg.builtin.empty() && !cfg.input.empty()) throw InputError("give either --input or --builtin, not both");
  if (cfg.builtin.empty() && cfg.input.empty()) throw InputError("command '" + cfg.command + "' needs --input or --builtin");
  Source src;
  if (!cfg.builtin.empty()) {
    src.tmpl = builtin_template(cfg.builtin);
    src.description = {{"builtin", cfg.builtin}};
    return src;
  }
  const Json j = read_json_file(cfg.input);
  if (j.is_object() && j.contains("blocks")) {
    src.tmpl = template_from_json(j);
  } else if (j.is_object() && j.contains("size")) {
    src.structure = structure_from_json(j);
  } else {
    throw InputError("'" + cfg.input + "' is neither a template (\"blocks\") nor a structure (\"size\")");
  }
  src.description = {{"input", cfg.input}};
  return src;
}

const BlockTemplate& need_template(const Source& src, const std::string& command) {
  if (!src.tmpl) throw InputError("command '" + command + "' needs a template, not a finite structure");
  return *src.tmpl;
}

Json block_order(const BlockTemplate& t) {
  Json names = Json::array();
  for (const auto& b : t.blocks()) names.push_back(b.name);
  return names;
}

Json report_header(const RunConfig& cfg, const Source& src) {
  Json r = {{"command", cfg.command}, {"version", std::string(kVersion)}, {"source", src.description}};
  if (src.tmpl) r["block_order"] = block_order(*src.tmpl);
  return r;
}

Json series_json(const IntSeries& s) {
  Json out = Json::array();
  for (const auto& c : s.coefficients()) out.push_back(bigint_to_json(c));
  return out;
}

std::string series_text(const IntSeries& s) {
  std::string out;
  for (std::size_t i = 0; i < s.length(); ++i) out += (i ? "," : "") + s[i].str();
  return out;
}

Json capacity_json(std::size_t size) { return size == kInfinite ? Json("inf") : Json(size); }

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string qpoly_residue_text(const std::vector<Rational>& coeffs) {
  std::string out;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string c = rational_text(coeffs[j]);
    if (j == 0) {
      out += c;
    } else {
      out += (coeffs[j] == 1 ? std::string() : c + " ") + (j == 1 ? "n" : "n^" + std::to_string(j));
    }
  }
  return out.empty() ? "0" : out;
}

std::size_t dimension(const RunConfig& cfg, const BlockTemplate& t) {
  if (cfg.dim) return *cfg.dim;
  return template_components(t, cfg.dmax).k;
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& report, const std::function<void()>& as_text) {
  if (cfg.text()) {
    as_text();
  } else {
    out << report.dump(2) << '\n';
  }
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const BlockTemplate& t = need_template(src, cfg.command);
  const std::size_t D = cfg.degree_or(10);
  TypeRegistry reg(t, cfg.threads);
  const auto rep = profile_series(reg, D);
  Json r = report_header(cfg, src);
  r["bounds"] = {{"degree", D}};
  r["profile"] = series_json(rep.series);
  r["nondecreasing"] = rep.nondecreasing;
  emit(cfg, out, r, [&] {
    out << "profile " << series_text(rep.series) << '\n';
    out << "nondecreasing " << (rep.nondecreasing ? "yes" : "no") << '\n';
  });
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  Json r = report_header(cfg, src);
  if (src.structure) {
    const Partition p = minimal_decomposition(*src.structure);
    r["components"] = partition_to_json(p);
    r["component_count"] = p.size();
    r["k"] = 0;
    emit(cfg, out, r, [&] {
      out << "components " << p.size() << '\n';
      for (const auto& b : p.blocks()) {
        out << " ";
        for (auto e : b) out << ' ' << e;
        out << '\n';
      }
      out << "k 0\n";
    });
    return kExitOk;
  }
  const Components c = template_components(*src.tmpl, cfg.dmax);
  r["bounds"] = {{"d_max", c.d_max}};
  r["components"] = components_to_json(*src.tmpl, c.classes);
  r["component_count"] = c.classes.size();
  Json sizes = Json::array();
  for (auto s : c.sizes) sizes.push_back(capacity_json(s));
  r["sizes"] = sizes;
  r["k"] = c.k;
  r["fatness"] = c.d;
  r["n0"] = c.n0;
  emit(cfg, out, r, [&] {
    out << "components " << c.classes.size() << '\n';
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
      out << " ";
      for (auto x : c.classes[i]) out << ' ' << src.tmpl->blocks()[x].name;
      out << "  (" << (c.sizes[i] == kInfinite ? std::string("inf") : std::to_string(c.sizes[i])) << ")\n";
    }
    out << "k " << c.k << "\nfatness " << c.d << "\nn0 " << c.n0 << '\n';
  });
  return kExitOk;
}

Json form_json(const HilbertForm& h) {
  Json j = hilbert_to_json(h);
  j["text"] = h.str();
  return j;
}

int cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const BlockTemplate& t = need_template(src, cfg.command);
  const std::size_t D = cfg.degree_or(14);
  const std::size_t B = cfg.gen_bound.value_or(D);
  const std::size_t k = dimension(cfg, t);
  TypeRegistry reg(t, cfg.threads);
  const auto rep = profile_series(reg, D);
  const HilbertForm fitted = fit_rational(rep.series, k, cfg.guard);
  const LeadingHilbert leading = hilbert_via_leading(reg, D, B);
  const bool agree = fitted == leading.form;
  const auto nonneg = nonnegative_form(fitted);

  Json r = report_header(cfg, src);
  r["bounds"] = {{"degree", D}, {"gen_bound", B}, {"guard", cfg.guard}, {"d_max", cfg.dmax}};
  r["dim"] = k;
  r["profile"] = series_json(rep.series);
  r["fit"] = form_json(fitted);
  r["leading"] = form_json(leading.form);
  r["chains"] = leading.chains.size();
  r["agree"] = agree;
  r["nonnegative"] = nonneg ? form_json(*nonneg) : Json(nullptr);
  emit(cfg, out, r, [&] {
    out << "fit      " << fitted.str() << '\n';
    out << "leading  " << leading.form.str() << '\n';
    out << "agree    " << (agree ? "yes" : "no") << '\n';
    if (nonneg && !(*nonneg == fitted)) out << "nonneg   " << nonneg->str() << '\n';
  });
  return agree ? kExitOk : kExitConsistency;
}

int cmd_qpoly(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const BlockTemplate& t = need_template(src, cfg.command);
  const std::size_t D = cfg.degree_or(14);
  const std::size_t k = dimension(cfg, t);
  TypeRegistry reg(t, cfg.threads);
  const auto rep = profile_series(reg, D);
  const HilbertForm form = fit_rational(rep.series, k, cfg.guard);
  const QuasiPolynomial q = quasi_polynomial(form);
  const auto lead = q.leading_coefficient();

  Json r = report_header(cfg, src);
  r["bounds"] = {{"degree", D}, {"guard", cfg.guard}, {"d_max", cfg.dmax}};
  r["form"] = form_json(form);
  r["quasi_polynomial"] = quasi_polynomial_to_json(q);
  r["degree"] = q.degree();
  r["leading_coefficient"] = lead ? rational_to_json(*lead) : Json(nullptr);
  emit(cfg, out, r, [&] {
    out << "form    " << form.str() << '\n';
    out << "period  " << q.period << "\nn_min   " << q.n_min << "\ndegree  " << q.degree() << '\n';
    for (std::size_t res = 0; res < q.residues.size(); ++res) {
      out << "  n = " << res << " mod " << q.period << ": " << qpoly_residue_text(q.residues[res]) << '\n';
    }
  });
  return kExitOk;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const BlockTemplate& t = need_template(src, cfg.command);
  const std::size_t n = cfg.degree_or(3);
  TypeRegistry reg(t, cfg.threads);
  reg.build(n);

  Json types = Json::object();
  auto note = [&](const IsoType& type) {
    const auto id = reg.find(type);
    if (!id) throw ConsistencyError("product mentions a type the template does not realize");
    const auto& info = reg.info(*id);
    types[type.hex()] = {{"degree", id->degree}, {"representative", info.leading.counts()}};
    return type.hex();
  };

  Json products = Json::array();
  std::ostringstream text;
  for (std::size_t i = 1; 2 * i <= n; ++i) {
    const auto& left = reg.types(i);
    const auto& right = reg.types(n - i);
    for (std::size_t a = 0; a < left.size(); ++a) {
      for (std::size_t b = (2 * i == n ? a : 0); b < right.size(); ++b) {
        const OrbitSum prod = orbit_product(reg, {{left[a].type, 1}}, {{right[b].type, 1}});
        Json terms = Json::object();
        text << left[a].leading.str() << " * " << right[b].leading.str() << " =";
        bool first = true;
        for (const auto& [type, coeff] : prod) {
          terms[note(type)] = bigint_to_json(coeff);
          text << (first ? " " : " + ") << coeff << ' ' << reg.info(*reg.find(type)).leading.str();
          first = false;
        }
        text << '\n';
        products.push_back({{"left", note(left[a].type)}, {"right", note(right[b].type)}, {"product", terms}});
      }
    }
  }
  const std::size_t rank = n > 0 ? mult_by_e_rank(reg, n - 1) : 0;

  Json r = report_header(cfg, src);
  r["bounds"] = {{"degree", n}};
  r["products"] = products;
  r["types"] = types;
  if (n > 0) r["e_rank"] = {{"from_degree", n - 1}, {"rank", rank}, {"phi", reg.types(n - 1).size()}};
  emit(cfg, out, r, [&] {
    out << text.str();
    if (n > 0) out << "rank of e: degree " << n - 1 << " -> " << n << " is " << rank << '\n';
  });
  return kExitOk;
}

int cmd_planar(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.builtin.empty() || !cfg.input.empty()) throw InputError("planar takes no --input or --builtin");
  const std::size_t n = cfg.degree_or(4);
  const auto trees = enumerate_reduced(n);
  const PlanarProfile p = planar_profile(n, cfg.depth);

  Json r = {{"command", cfg.command}, {"version", std::string(kVersion)}};
  r["bounds"] = {{"leaves", n}, {"depth", cfg.depth ? Json(*cfg.depth) : Json(std::max<std::size_t>(n ? n - 1 : 1, 1))}};
  r["count"] = trees.size();
  r["sample_count"] = p.count;
  r["sample_size"] = p.sample_size;
  r["diagnostic"] = p.diagnostic;
  if (n <= 6) {
    Json names = Json::array();
    for (const auto& tr : trees) names.push_back(tr.str());
    r["trees"] = names;
  }
  emit(cfg, out, r, [&] {
    out << "reduced trees with " << n << " leaves: " << trees.size() << '\n';
    out << "sample of " << p.sample_size << " leaves realizes " << p.count << '\n';
    if (!p.diagnostic.empty()) out << p.diagnostic << '\n';
  });
  return kExitOk;
}

// One row of the verification matrix: check name -> "pass", "FAIL: ..." or "error: ...".
using Row = std::vector<std::pair<std::string, std::string>>;

void check(Row& row, const std::string& name, const std::function<std::string()>& body) {
  try {
    const std::string failure = body();
    row.emplace_back(name, failure.empty() ? "pass" : "FAIL: " + failure);
  } catch (const std::exception& e) {
    row.emplace_back(name, std::string("error: ") + e.what());
  }
}

Row verify_template(const std::string& name, const RunConfig& cfg) {
  const std::size_t D = cfg.degree_or(14);
  const BlockTemplate t = builtin_template(name);
  TypeRegistry reg(t, cfg.threads);
  Row row;
  ProfileReport rep;
  std::optional<Components> comps;
  std::optional<HilbertForm> fitted;

  check(row, "profile", [&]() -> std::string {
    rep = profile_series(reg, D);
    return rep.nondecreasing ? "" : "profile decreases";
  });
  check(row, "components", [&]() -> std::string {
    comps = template_components(t, cfg.dmax);
    if (comps->k > t.infinite_block_count()) return "more infinite components than infinite blocks";
    if (t.infinite_block_count() > 0 && comps->k == 0) return "no infinite component";
    return "";
  });
  check(row, "hilbert", [&]() -> std::string {
    if (!comps) return "no dimension";
    fitted = fit_rational(rep.series, comps->k, cfg.guard);
    const auto leading = hilbert_via_leading(reg, D, cfg.gen_bound.value_or(D));
    if (!(leading.form == *fitted)) return "fit " + fitted->str() + " vs leading " + leading.form.str();
    if (RationalForm::from(*fitted).reduced().pole_order() != comps->k) return "pole order differs from k";
    return "";
  });
  check(row, "addlayer", [&]() -> std::string {
    const auto a = check_addlayer(reg, std::min<std::size_t>(D, 10));
    return a.ok() ? "" : std::to_string(a.violations.size()) + " violations";
  });
  check(row, "growth", [&]() -> std::string {
    if (!comps) return "no components";
    for (std::size_t n = 0; n <= D; ++n) {
      const BigInt phi = rep.series[n];
      if (partition_lower_bound(comps->k, n, comps->n0) > phi) return "lower bound fails at n=" + std::to_string(n);
      if (phi > reg.composition_count(n)) return "upper bound fails at n=" + std::to_string(n);
    }
    return "";
  });
  check(row, "qpoly", [&]() -> std::string {
    if (!fitted || !comps) return "no form";
    const auto q = quasi_polynomial(*fitted);
    if (q.degree() != static_cast<long>(comps->k) - 1) return "degree " + std::to_string(q.degree());
    if (!q.leading_coefficient()) return "leading coefficient varies";
    for (std::size_t n = q.n_min; n <= D; ++n) {
      if (q(n) != Rational(rep.series[n])) return "value mismatch at n=" + std::to_string(n);
    }
    return "";
  });
  check(row, "e_rank", [&]() -> std::string {
    for (std::size_t n = 0; n <= std::min<std::size_t>(D, 8); ++n) {
      if (mult_by_e_rank(reg, n) != reg.types(n).size()) return "not injective at n=" + std::to_string(n);
    }
    return "";
  });
  return row;
}

Row verify_planar() {
  Row row;
  const std::vector<std::size_t> schroder = {1, 1, 1, 3, 11, 45, 197, 903};
  check(row, "schroder", [&]() -> std::string {
    for (std::size_t n = 0; n < schroder.size(); ++n) {
      if (enumerate_reduced(n).size() != schroder[n]) return "count differs at n=" + std::to_string(n);
    }
    return "";
  });
  check(row, "profile", [&]() -> std::string {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto p = planar_profile(n);
      if (p.count != schroder[n]) return "sample profile differs at n=" + std::to_string(n);
    }
    return "";
  });
  check(row, "triples", [&]() -> std::string {
    for (std::size_t n = 3; n <= 6; ++n) {
      for (const auto& tr : enumerate_reduced(n)) {
        const auto back = reconstruct_from_triples(n, triples_of(tr));
        if (!back || !(*back == tr)) return "round trip fails for " + tr.str();
      }
    }
    return "";
  });
  check(row, "monopart", [&]() -> std::string {
    const auto rep = no_pair_monopart(embedding_sample(6, 5));
    return rep.ok ? "" : "some pair is a monomorphic part";
  });
  return row;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.input.empty()) throw InputError("verify runs on builtins; use --builtin to restrict it");
  std::vector<std::string> names = cfg.builtin.empty() ? verification_gallery() : std::vector<std::string>{cfg.builtin};
  std::vector<std::pair<std::string, Row>> rows;
  for (const auto& name : names) rows.emplace_back(name, verify_template(name, cfg));
  if (cfg.builtin.empty()) rows.emplace_back("planar", verify_planar());

  bool ok = true;
  Json matrix = Json::array();
  for (const auto& [name, row] : rows) {
    Json checks = Json::object();
    for (const auto& [check_name, result] : row) {
      checks[check_name] = result;
      ok = ok && result == "pass";
    }
    matrix.push_back({{"name", name}, {"checks", checks}});
  }
  Json r = {{"command", cfg.command}, {"version", std::string(kVersion)}};
  r["bounds"] = {{"degree", cfg.degree_or(14)}, {"guard", cfg.guard}, {"d_max", cfg.dmax}};
  r["matrix"] = matrix;
  r["ok"] = ok;
  emit(cfg, out, r, [&] {
    for (const auto& [name, row] : rows) {
      out << name << '\n';
      for (const auto& [check_name, result] : row) out << "  " << check_name << ": " << result << '\n';
    }
    out << (ok ? "all checks passed" : "some checks failed") << '\n';
  });
  return ok ? kExitOk : kExitConsistency;
}

int cmd_template(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  out << template_to_json(need_template(src, cfg.command)).dump(2) << '\n';
  return kExitOk;
}

int cmd_builtins(const RunConfig& cfg, std::ostream& out) {
  Json list = Json::array();
  const auto catalog = builtin_catalog();
  for (const auto& e : catalog) list.push_back({{"builtin", e.builtin}, {"realizes", e.realizes}});
  Json r = {{"command", cfg.command}, {"version", std::string(kVersion)}, {"builtins", list}};
  emit(cfg, out, r, [&] {
    for (const auto& e : catalog) out << e.builtin << "  " << e.realizes << '\n';
  });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Profiles, monomorphic decompositions and Hilbert series of age algebras"};
  app.set_version_flag("--version", std::string(kVersion));
  app.add_option("command", cfg.command, "profile | decompose | hilbert | qpoly | constants | planar | verify | builtins | template")
      ->required()
      ->check(CLI::IsMember({"profile", "decompose", "hilbert", "qpoly", "constants", "planar", "verify", "builtins", "template"}));
  app.add_option("--input,-i", cfg.input, "template or finite structure JSON file");
  app.add_option("--builtin,-b", cfg.builtin, "builtin template such as sym:3 (see 'builtins')");
  app.add_option("--degree,-D", cfg.degree, "degree bound D (planar: number of leaves)");
  app.add_option("--dim", cfg.dim, "monomorphic dimension k used for fitting (default: computed)");
  app.add_option("--gen-bound", cfg.gen_bound, "generator degree bound B for the leading-monomial path (default: D)")
      ->check(CLI::PositiveNumber);
  app.add_option("--guard", cfg.guard, "trailing zero coefficients required by the rational fit")
      ->check(CLI::PositiveNumber);
  app.add_option("--dmax", cfg.dmax, "largest fatness level tried")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "planar sample depth budget")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads for type computations")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cfg.command == "profile") return cmd_profile(cfg, out);
    if (cfg.command == "decompose") return cmd_decompose(cfg, out);
    if (cfg.command == "hilbert") return cmd_hilbert(cfg, out);
    if (cfg.command == "qpoly") return cmd_qpoly(cfg, out);
    if (cfg.command == "constants") return cmd_constants(cfg, out);
    if (cfg.command == "planar") return cmd_planar(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "template") return cmd_template(cfg, out);
    return cmd_builtins(cfg, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UndeterminedError& e) {
    err << "undetermined: " << e.what() << '\n';
    return kExitUndetermined;
  } catch (const FitError& e) {
    err << "fit failure: " << e.what() << '\n';
    return kExitFit;
  } catch (const ConsistencyError& e) {
    err << "consistency violation: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitConsistency;
  }
}

}  // namespace agealg
