// Thin pybind11 layer. Results cross the boundary as JSON text so that big
// integers and rationals survive unchanged; agealg/__init__.py decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "agealg/ageprofile.hpp"
#include "agealg/cli.hpp"
#include "agealg/error.hpp"
#include "agealg/gallery.hpp"
#include "agealg/hilbert.hpp"
#include "agealg/json_io.hpp"
#include "agealg/monodec.hpp"
#include "agealg/planar.hpp"

namespace py = pybind11;
using namespace agealg;

namespace {

BlockTemplate load(const std::string& source) {
  if (!source.empty() && source.front() == '{') return template_from_json(parse_json(source));
  return builtin_template(source);
}

std::string series(const IntSeries& s) {
  Json out = Json::array();
  for (const auto& c : s.coefficients()) out.push_back(bigint_to_json(c));
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_agealg, m) {
  m.doc() = "Profiles, monomorphic decompositions and Hilbert series of age algebras";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UndeterminedError>(m, "UndeterminedError", PyExc_RuntimeError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"agealg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("builtins", [] {
    std::vector<std::string> names;
    for (const auto& e : builtin_catalog()) names.push_back(e.builtin);
    return names;
  });

  m.def("template_json", [](const std::string& source) { return template_to_json(load(source)).dump(); });

  m.def("profile_json", [](const std::string& source, std::size_t degree) {
    TypeRegistry reg(load(source));
    return series(profile_series(reg, degree).series);
  });

  m.def("components_json", [](const std::string& source, std::size_t d_max) {
    const auto t = load(source);
    const auto c = template_components(t, d_max);
    return Json{{"components", components_to_json(t, c.classes)}, {"k", c.k}, {"fatness", c.d}, {"n0", c.n0}}.dump();
  });

  m.def("hilbert_json", [](const std::string& source, std::size_t degree, std::size_t guard) {
    const auto t = load(source);
    TypeRegistry reg(t);
    const auto fitted = fit_rational(profile_series(reg, degree).series, template_components(t).k, guard);
    Json j = hilbert_to_json(fitted);
    j["text"] = fitted.str();
    j["quasi_polynomial"] = quasi_polynomial_to_json(quasi_polynomial(fitted));
    return j.dump();
  });

  m.def("reduced_trees", [](std::size_t n) {
    std::vector<std::string> out;
    for (const auto& t : enumerate_reduced(n)) out.push_back(t.str());
    return out;
  });

  m.def("contract", [](const std::vector<LeafAddress>& leaves) { return contract(leaves).str(); });

  m.def("shuffle_constant", [](const std::string& t1, const std::string& t2, const std::string& t) {
    return shuffle_constant(PlaneTree::parse(t1), PlaneTree::parse(t2), PlaneTree::parse(t)).str();
  });
}
