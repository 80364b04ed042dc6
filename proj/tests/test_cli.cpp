#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agealg/cli.hpp"
#include "agealg/gallery.hpp"
#include "agealg/json_io.hpp"

using namespace agealg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "agealg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) { return std::string(AGEALG_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("agealg_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// Blocks only separate at level 3, where X3's ternary relation first shows.
BlockTemplate adversarial() {
  return BlockTemplate(Signature({{"R2", 2}, {"R3", 3}}), {{"Y", kInfinite}, {"X2", kInfinite}, {"X3", kInfinite}},
                       {{TuplePattern{{1, 1}, {0, 1}}}, {TuplePattern{{2, 2, 2}, {0, 1, 2}}}});
}

std::vector<long> ints(const Json& j) { return j.get<std::vector<long>>(); }

}  // namespace

TEST_CASE("profile reports the series") {
  const auto r = run({"profile", "-b", "sym:3", "-D", "6"});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["command"] == "profile");
  CHECK(j["version"] == std::string(kVersion));
  CHECK(ints(j["profile"]) == std::vector<long>{1, 1, 2, 3, 4, 5, 7});
  CHECK(j["nondecreasing"] == true);
  CHECK(j["bounds"]["degree"] == 6);
  CHECK(ints(run({"profile", "-b", "groupoid", "-D", "4"}).json()["profile"]) == std::vector<long>{1, 2, 5, 9, 14});
  CHECK(ints(run({"profile", "-b", "clique_plus_coclique", "-D", "5"}).json()["profile"]) ==
        std::vector<long>{1, 1, 2, 3, 4, 5});
}

TEST_CASE("decompose on templates and finite structures") {
  auto j = run({"decompose", "-b", "wheel_plus_coclique"}).json();
  CHECK(j["component_count"] == 3);
  CHECK(j["k"] == 2);
  CHECK(j["fatness"] == 2);
  CHECK(j["n0"] == 5);
  CHECK(run({"decompose", "-b", "groupoid"}).json()["k"] == 3);

  const auto finite = run({"decompose", "-i", data_file("k2_plus_k2.json")});
  REQUIRE(finite.code == kExitOk);
  j = finite.json();
  CHECK(j["component_count"] == 2);
  CHECK(j["components"] == Json::parse("[[0,1],[2,3]]"));
  CHECK(j["k"] == 0);
}

TEST_CASE("hilbert runs both paths") {
  const auto r = run({"hilbert", "-b", "wheel_plus_coclique"});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["agree"] == true);
  CHECK(j["dim"] == 2);
  CHECK(j["fit"]["text"] == "(1 + Z^3)/((1 - Z)(1 - Z^2))");
  CHECK(hilbert_from_json(j["fit"]) == hilbert_from_json(j["leading"]));
  CHECK(ints(j["fit"]["numerator"]) == std::vector<long>{1, 0, 0, 1});
  CHECK(ints(j["fit"]["denominator"]) == std::vector<long>{1, 2});
  CHECK(run({"hilbert", "-b", "groupoid"}).json()["fit"]["text"] == "(1 - Z + 2Z^2 - Z^3)/(1 - Z)^3");
}

TEST_CASE("qpoly and constants") {
  auto j = run({"qpoly", "-b", "sym:2"}).json();
  CHECK(j["quasi_polynomial"]["period"] == 2);
  CHECK(j["degree"] == 1);
  CHECK(j["leading_coefficient"] == Json::parse("[1,2]"));
  const auto text = run({"qpoly", "-b", "sym:2", "--format", "text"});
  CHECK(text.out.find("n = 0 mod 2: 1/2 n + 1") != std::string::npos);

  j = run({"constants", "-b", "sym:2", "-D", "2"}).json();
  REQUIRE(j["products"].size() == 1);
  long total = 0;
  for (const auto& [code, c] : j["products"][0]["product"].items()) {
    CHECK(j["types"][code]["degree"] == 2);
    total += c.get<long>();
  }
  // o * o over the two degree-2 types, each with 2 splits.
  CHECK(total == 4);
  CHECK(j["e_rank"]["rank"] == j["e_rank"]["phi"]);
}

TEST_CASE("planar, builtins, template and verify") {
  auto j = run({"planar", "-D", "4"}).json();
  CHECK(j["count"] == 11);
  CHECK(j["sample_count"] == 11);
  CHECK(j["diagnostic"] == "");
  j = run({"planar", "-D", "4", "--depth", "2"}).json();
  CHECK(j["sample_count"] < 11);
  CHECK(j["diagnostic"] != "");

  j = run({"builtins"}).json();
  CHECK(j["builtins"].size() >= 9);

  const auto dumped = run({"template", "-b", "clique_plus_coclique"});
  REQUIRE(dumped.code == kExitOk);
  CHECK(template_from_json(Json::parse(dumped.out)) == clique_plus_coclique());
  CHECK(Json::parse(dumped.out) == read_json_file(data_file("clique_plus_coclique.json")));

  const auto v = run({"verify", "-b", "sym:2", "-D", "10"});
  CHECK(v.code == kExitOk);
  CHECK(v.json()["ok"] == true);
}

TEST_CASE("input files round trip through the CLI") {
  const auto path = write_temp("cpc.json", template_to_json(clique_plus_coclique()).dump());
  CHECK(run({"profile", "-i", path, "-D", "8"}).out.find("profile") != std::string::npos);
  CHECK(run({"profile", "-i", path, "-D", "8"}).json()["profile"] ==
        run({"profile", "-b", "clique_plus_coclique", "-D", "8"}).json()["profile"]);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"profile"}).code == kExitInput);
  CHECK(run({"profile", "-b", "nope"}).code == kExitInput);
  CHECK(run({"profile", "-b", "sym:2", "-i", "x.json"}).code == kExitInput);
  CHECK(run({"profile", "-i", "/nonexistent/file.json"}).code == kExitInput);
  CHECK(run({"profile", "-i", write_temp("bad.json", "{\"blocks\": [")}).code == kExitInput);
  CHECK(run({"profile", "-i", write_temp("neither.json", "{\"x\": 1}")}).code == kExitInput);
  CHECK(run({"hilbert", "-i", data_file("k2_plus_k2.json")}).code == kExitInput);
  CHECK(run({"profile", "-b", "sym:2", "--format", "xml"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);

  const auto adv = write_temp("adversarial.json", template_to_json(adversarial()).dump());
  const auto undetermined = run({"decompose", "-i", adv, "--dmax", "2"});
  CHECK(undetermined.code == kExitUndetermined);
  CHECK(undetermined.err.find("undetermined") != std::string::npos);
  CHECK(run({"decompose", "-i", adv}).code == kExitOk);

  const auto fit = run({"hilbert", "-b", "sym:2", "--dim", "1"});
  CHECK(fit.code == kExitFit);
  CHECK_FALSE(fit.err.empty());
}

TEST_CASE("property: output is deterministic and thread independent") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"profile", "-b", "qsym:2", "-D", "9"},
                                                                {"decompose", "-b", "groupoid"},
                                                                {"hilbert", "-b", "sym:3", "-D", "12"},
                                                                {"constants", "-b", "clique_plus_coclique"},
                                                                {"planar", "-D", "5", "--format", "text"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "4"});
    CHECK(run(threaded).out == a.out);
  }
}

TEST_CASE("property: JSON round trips") {
  for (const auto& name : verification_gallery()) {
    const auto t = builtin_template(name);
    CHECK(template_from_json(parse_json(template_to_json(t).dump())) == t);
    const auto j = run({"hilbert", "-b", name}).json();
    CHECK(hilbert_to_json(hilbert_from_json(j["fit"])) == hilbert_to_json(hilbert_from_json(j["leading"])));
  }
  const auto s = structure_from_json(read_json_file(data_file("k2_plus_k2.json")));
  CHECK(structure_from_json(structure_to_json(s)) == s);
  CHECK(bigint_from_json(bigint_to_json(BigInt("123456789012345678901234567890"))) ==
        BigInt("123456789012345678901234567890"));
  CHECK(bigint_from_json(bigint_to_json(BigInt(-7))) == -7);
}

TEST_CASE("text formats") {
  CHECK(run({"profile", "-b", "sym:2", "-D", "4", "--format", "text"}).out.find("1,1,2,2,3") != std::string::npos);
  const auto d = run({"decompose", "-b", "wheel_plus_coclique", "--format", "text"}).out;
  CHECK(d.find("components 3") != std::string::npos);
  CHECK(d.find("k 2") != std::string::npos);
  CHECK(run({"verify", "-b", "coclique", "--format", "text"}).out.find("all checks passed") != std::string::npos);
}
