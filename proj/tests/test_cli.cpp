#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "etacoh/cli.hpp"
#include "etacoh/config.hpp"
#include "etacoh/grouprep.hpp"
#include "json.hpp"

using namespace etacoh;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
  const auto lens = run({"eta", "cyclic", "--l", "8", "--a", "1,1", "--rho", "r4-r0"});
  CHECK(lens.status == 0);
  CHECK(lens.out == "1 (order 2 mod 2Z)\n");
  const auto nf = run({"nf", "--algebra", "sd", "--expr", "y*u^3"});
  CHECK(nf.status == 0);
  CHECK(nf.out == "y^3*u*P\n");
  const auto verify = run({"verify", "--suite", "all", "--format", "json"});
  CHECK(verify.status == 0);
  const auto doc = nlohmann::json::parse(verify.out);
  CHECK(doc.is_array());
  CHECK(doc.size() >= 40);
  for (const auto& c : doc) CHECK(c["status"] == "pass");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"eta", "cyclic", "--l", "8", "--a", "1,1", "--rho", "r4-r0"},
      {"nf", "--algebra", "sd", "--expr", "y*u^3"},
      {"verify", "--suite", "all", "--format", "json"},
      {"push", "--hom", "sd-d8", "--degree", "6", "--format", "json"},
  };
  for (const auto& c : commands) CHECK(run(c).out == run(c).out);
}

TEST_CASE("json carries the text content") {
  const std::vector<std::string> eta = {"eta", "bundle", "--l", "8", "--a", "1,1,1,1,1,1", "--chern", "2,0,0,0,0,0", "--rho", "r0-r3"};
  const auto text = run(eta);
  CHECK(text.out == "-67/32 (order 32 mod Z)\n");
  auto args = eta;
  args.insert(args.end(), {"--format", "json"});
  const auto doc = nlohmann::json::parse(run(args).out);
  CHECK(doc["value"] == "-67/32");
  CHECK(doc["order"] == "32");
  CHECK(doc["modulus"] == "Z");

  const auto q = run({"eta", "quaternion", "--k", "0", "--rho", "2-tau", "--float"});
  CHECK(q.out.rfind("7/8 (order 8 mod Z)\nfloat 0.87", 0) == 0);
  const auto qj = nlohmann::json::parse(run({"--format", "json", "--float", "eta", "quaternion", "--k", "0", "--rho", "2-tau"}).out);
  CHECK(std::abs(qj["float"].get<double>() - 0.875) < 1e-12);

  const auto basis = run({"basis", "--algebra", "d8", "--degree", "3"});
  CHECK(basis.out == "dimension 4\nalpha^3\nalpha*delta\nbeta^3\nbeta*delta\n");
  const auto bj = nlohmann::json::parse(run({"basis", "--algebra", "d8", "--degree", "3", "--format", "json"}).out);
  CHECK(bj["basis"] == nlohmann::json({"alpha^3", "alpha*delta", "beta^3", "beta*delta"}));

  const auto push = nlohmann::json::parse(run({"push", "--hom", "d8-v2", "--degree", "3", "--format", "json"}).out);
  CHECK(push["matrix"].size() == push["target_basis"].size());
  CHECK(push["matrix"][0].size() == push["source_basis"].size());
}

TEST_CASE("verbs") {
  CHECK(run({"order", "--value", "7/8", "--modulus", "2Z"}).out == "16\n");
  CHECK(run({"order", "--value", "3/2"}).out == "2\n");
  CHECK(run({"span", "--rows", "1,0;0,1"}).out == "1 (order 1 mod Z)\n");
  CHECK(run({"restrict", "--group", "SD16", "--subgroup", "Q8", "--images", "s^2,ts", "--chi", "rho2"}).out == "k1 + k3\n");
  CHECK(run({"restrict", "--group", "SD16", "--subgroup", "Q8", "--images", "s^2,ts", "--chi", "4 + rho*rho5 - 2*(rho+rho5)"}).out ==
        parse_virtual_character(character_table("Q8"), "(2-tau)^2").str() + "\n");
  CHECK(run({"sq", "--steenrod", "sd", "--i", "2", "--expr", "P"}).out == "y^2*P + x^2*P\n");
  CHECK(run({"sq", "--steenrod", "lens:4", "--expr", "X"}).out == "X^2 + X\n");
  const auto wu = run({"wu", "--steenrod", "m:4:ztausigma"});
  CHECK(wu.out.find("v1 = tau\n") != std::string::npos);
  CHECK(wu.out.find("w1 = tau\n") != std::string::npos);
  CHECK(run({"push", "--hom", "sd-d8", "--monomial", "alpha^2*delta"}).out == "xi(y*u)\n");
  CHECK(run({"push", "--hom", "sd-m:4", "--monomial", "Z^3*tau^2"}).out == "xi(y*u*P)\n");
  CHECK(run({"table", "--n", "20"}).out == "n=20 [8k+4]: one-column 0 (order 1), two-column rank 3\n");
  const auto q8 = run({"verify", "--suite", "q8", "--q8-max", "1"});
  CHECK(q8.status == 0);
  CHECK(q8.out.find("0 failed") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  const auto missing = run({"eta", "cyclic", "--l", "8", "--a", "1,1"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("--rho") != std::string::npos);
  const auto bad_rho = run({"eta", "cyclic", "--l", "8", "--a", "1,1", "--rho", "r4-q"});
  CHECK(bad_rho.status == 2);
  CHECK(bad_rho.err.find("--rho") != std::string::npos);
  const auto bad_list = run({"eta", "cyclic", "--l", "8", "--a", "1,x", "--rho", "r4-r0"});
  CHECK(bad_list.status == 2);
  CHECK(bad_list.err.find("--a") != std::string::npos);
  const auto bad_format = run({"table", "--n", "3", "--format", "xml"});
  CHECK(bad_format.status == 2);
  CHECK(bad_format.err.find("--format") != std::string::npos);
  CHECK(run({"nf", "--algebra", "sd", "--expr", "y*"}).err.find("--expr") != std::string::npos);
  CHECK(run({"nf", "--algebra", "nope", "--expr", "y"}).err.find("--algebra") != std::string::npos);
  CHECK(run({"verify", "--suite", "nope"}).status == 2);
  CHECK(run({"push", "--hom", "sd-d8"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"order", "--value", "1/0"}).status == 2);
}

TEST_CASE("computation errors exit 1 with the error name") {
  const auto even = run({"eta", "cyclic", "--l", "8", "--a", "1,2", "--rho", "r4-r0"});
  CHECK(even.status == 1);
  CHECK(even.err.find("NotFree") != std::string::npos);
  const auto odd = run({"eta", "cyclic", "--l", "8", "--a", "1", "--rho", "r4-r0"});
  CHECK(odd.status == 1);
  CHECK(odd.err.find("OddLength") != std::string::npos);
  const auto dim = run({"eta", "cyclic", "--l", "8", "--a", "1,1", "--rho", "r4"});
  CHECK(dim.status == 1);
  CHECK(dim.err.find("NotVirtualDimensionZero") != std::string::npos);
  const auto bound = run({"basis", "--algebra", "sd", "--degree", "65"});
  CHECK(bound.status == 1);
  CHECK(bound.err.find("DegreeBoundExceeded") != std::string::npos);
  CHECK(run({"wu", "--steenrod", "sd"}).err.find("error: ") == 0);
}

TEST_CASE("custom algebras through the config") {
  const std::string path = "etacoh_cli_config.json";
  {
    std::ofstream f(path);
    f << R"({"algebras": [{"name": "rp3", "generators": [{"name": "x", "degree": 1}], "relations": ["x^4"],
             "poincare": {"dimension": 3, "top": "x^3"}, "steenrod": []}]})";
  }
  CHECK(run({"nf", "--config", path, "--algebra", "custom:rp3", "--expr", "x^2*x^2 + x"}).out == "x\n");
  CHECK(run({"wu", "--config", path, "--steenrod", "custom:rp3"}).out == "v0 = 1\nv1 = 0\nw0 = 1\nw1 = 0\nw2 = 0\nw3 = 0\n");
  ::setenv(kConfigEnvironment, path.c_str(), 1);
  CHECK(run({"basis", "--algebra", "custom:rp3", "--degree", "3"}).out == "dimension 1\nx^3\n");
  ::unsetenv(kConfigEnvironment);
  CHECK(run({"basis", "--algebra", "custom:rp3", "--degree", "3"}).status == 2);
  {
    std::ofstream f(path);
    f << "{\"algebras\": [{\"name\": \"r\", \"generators\": [{\"name\": \"x\", \"degree\": 1}], \"relations\": [\"x^^2\"]}]}";
  }
  const auto bad = run({"nf", "--config", path, "--algebra", "sd", "--expr", "y"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("--config") != std::string::npos);
  CHECK(bad.err.find("column") != std::string::npos);
  std::remove(path.c_str());
}
