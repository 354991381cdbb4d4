#include "ahg/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ahg::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("zoo-list") {
  const Run r = run({"zoo-list", "--format", "human"});
  CHECK(r.code == 0);
  CHECK(r.out.find("s6_nearly_kahler") != std::string::npos);
  CHECK(r.out.find("flat_cn") != std::string::npos);
  const Run j = run({"zoo-list"});
  const auto doc = nlohmann::json::parse(j.out);
  bool typed = false;
  for (const auto& e : doc) {
    for (const auto& p : e["parameters"]) typed = typed || p["type"] == "integer";
  }
  CHECK(typed);
}

TEST_CASE("classify") {
  const Run r = run({"classify", "flat_cn", "--n", "2"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto passed = doc["classification"]["passed"];
  CHECK(std::find(passed.begin(), passed.end(), "kahler") != passed.end());

  const Run s6 = run({"classify", "--manifold", "s6_nearly_kahler", "--points", "3"});
  CHECK(s6.code == 0);
  const auto d6 = nlohmann::json::parse(s6.out);
  CHECK(d6["classification"]["passed"] == nlohmann::json({"quasi", "nearly"}));
  for (const auto& l : d6["classification"]["labels"]) {
    const bool strict_expected = l["label"] == "quasi" || l["label"] == "nearly";
    CHECK(l["strict"] == strict_expected);
  }

  CHECK(run({"classify", "bogus_name"}).code == 2);
}

TEST_CASE("check exit codes") {
  CHECK(run({"check", "flat_cn", "--points", "5"}).code == 0);
  CHECK(run({"check", "s6_nearly_kahler", "--identities", "KIRI,DIM6-NK,PROP-NK",
             "--points", "10", "--seed", "7"})
            .code == 0);
  const Run na = run({"check", "random_torus", "--seed", "42", "--identities", "NK-1"});
  CHECK(na.code == 0);
  const auto doc = nlohmann::json::parse(na.out);
  REQUIRE(doc["identities"].size() == 1);
  CHECK(doc["identities"][0]["status"] == "not-applicable");
  CHECK(doc["identities"][0]["point"] == -1);

  CHECK(run({"check", "flat_cn", "--identities", "NOPE"}).code == 2);
  CHECK(run({"check", "flat_cn", "--points", "0"}).code == 2);
  CHECK(run({"check", "flat_cn", "--format", "xml"}).code == 2);
  CHECK(run({"check", "flat_cn", "--n", "9"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("failing identities exit 1 and name the worst tuple") {
  const Run r = run({"check", "s6_nearly_kahler", "--identities", "NK-1", "--points",
                     "2", "--tol", "1e-300", "--format", "human"});
  CHECK(r.code == 1);
  const auto at = r.out.find("FAIL NK-1");
  REQUIRE(at != std::string::npos);
  const std::string line = r.out.substr(at, r.out.find('\n', at) - at);
  // NK-1 has a barred second slot.
  CHECK(line.find("b,") != std::string::npos);
}

TEST_CASE("json schema") {
  const Run r = run({"check", "hopf_surface", "--points", "2", "--identities",
                     "HERM-4,GEN-B2"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["version"] == ahg::kVersion);
  CHECK(doc["meta"]["seed"] == 42);
  CHECK(doc["meta"]["fd"]["step"] == 1e-3);
  CHECK(doc["meta"]["fd"]["scheme"] == "central-4");
  CHECK(doc["classification"]["passed"] == nlohmann::json({"hermitian"}));
  REQUIRE(doc["identities"].size() == 4);
  for (const auto& id : doc["identities"]) {
    for (const char* key : {"code", "point", "residual", "tol", "pass", "worst_indices"}) {
      CHECK(id.contains(key));
    }
    CHECK(id["residual"].get<double>() >= 0.0);
  }
}

TEST_CASE("csv and human formats") {
  const Run csv = run({"check", "flat_cn", "--points", "3", "--identities",
                       "GEN-B2,NK-1,DIM6-NK", "--format", "csv"});
  CHECK(csv.code == 0);
  std::istringstream is(csv.out);
  std::string line;
  int rows = 0;
  std::getline(is, line);
  CHECK(line == "code,point,residual,tol,pass,status,worst_indices");
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3 + 3 + 1);

  const Run h = run({"check", "s6_nearly_kahler", "--points", "2", "--identities",
                     "KIRI,NK-4,QK-1,HERM-4", "--format", "human"});
  CHECK(h.code == 0);
  // Sorted worst first; not-applicable rows last.
  CHECK(h.out.find("HERM-4") > h.out.find("QK-1"));
  CHECK(h.out.find("PASS") != std::string::npos);
}

TEST_CASE("crosscheck") {
  const Run r = run({"crosscheck", "round_s2"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["crosscheck"]["max_discrepancy"].get<double>() < 1e-4);
  const Run f = run({"crosscheck", "flat_cn"});
  CHECK(nlohmann::json::parse(f.out)["crosscheck"]["max_discrepancy"].get<double>() < 1e-10);
}

TEST_CASE("output is deterministic and can go to a file") {
  const std::vector<std::string> args = {"check", "random_torus", "--seed", "3",
                                         "--points", "2", "--identities",
                                         "GEN-B2,CMP-1,RAW-B1"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.out == b.out);

  const auto path = std::filesystem::temp_directory_path() / "ahgeom_cli_test.json";
  auto with_out = args;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  const Run c = run(with_out);
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.out);
  std::filesystem::remove(path);
}
