#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "floerhf/report.hpp"

using json = floerhf::io::json;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(FLOERHF_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) {
  return std::string(FLOERHF_FIXTURE_DIR) + "/" + name;
}

json report_of(const CliRun& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("hf-map: fixtures and exit codes") {
  auto hyper = run_cli("hf-map --json " + fixture("hyperelliptic.json"));
  CHECK(hyper.exit_code == 0);
  auto jh = report_of(hyper);
  CHECK(jh["results"]["hf"]["ranks"] == json::array({6, 0, 0}));
  CHECK(jh["results"]["nielsen_number"] == 6);

  auto ident = run_cli("hf-map --json " + fixture("identity_genus2.json"));
  CHECK(ident.exit_code == 0);
  CHECK(report_of(ident)["results"]["hf"]["ranks"] == json::array({1, 4, 1}));

  auto dehn = run_cli("hf-map --json " + fixture("dehn_twist_genus2.json"));
  CHECK(dehn.exit_code == 0);
  CHECK(report_of(dehn)["results"]["hf"]["ranks"] == json::array({0, 3, 1}));

  auto par = run_cli("hf-map --json " + fixture("parallel_opposite.json"));
  CHECK(par.exit_code == 2);
  auto jp = report_of(par);
  CHECK(jp["results"]["validation"]["valid"] == false);
  bool clause4 = false;
  for (const auto& v : jp["results"]["validation"]["violations"])
    if (v["clause"] == "(4)") clause4 = true;
  CHECK(clause4);

  auto flip = run_cli("hf-map --json " + fixture("flip_twist.json"));
  CHECK(flip.exit_code == 0);
  CHECK(report_of(flip)["results"]["hf"]["ranks"] == json::array({6, 0, 0}));
}

TEST_CASE("hf-sing: trefoil pipeline") {
  auto r = run_cli("hf-sing --json " + fixture("trefoil.json"));
  CHECK(r.exit_code == 0);
  auto j = report_of(r);
  CHECK(j["results"]["hf"]["ranks"] == json::array({0, 2, 1}));
  CHECK(j["results"]["hf_plus"]["ranks"] == json::array({0, 0, 0}));
  CHECK(j["stages"]["verification"]["all_pass"] == true);
  CHECK(j["stages"]["decomposition"]["fiber"]["genus"] == 1);
  CHECK(j["stages"]["decomposition"]["fiber"]["chi"] == -1);
}

TEST_CASE("hf-sing: x^2+y^2 exits 3 with a hint, data input succeeds") {
  auto r = run_cli("hf-sing --json " + fixture("x2y2_poly.json"));
  CHECK(r.exit_code == 3);
  auto j = report_of(r);
  CHECK(j["error"]["code"] == "IrrationalBranch");
  CHECK(j["error"].contains("hint"));

  auto d = run_cli("hf-sing --json " + fixture("quadratic_data.json"));
  CHECK(d.exit_code == 0);
  auto jd = report_of(d);
  CHECK(jd["stages"]["diagram"]["gamma_star"] == true);
  CHECK(jd["results"]["hf"]["ranks"] == json::array({0, 3, 1}));
}

TEST_CASE("hf-sing: ak_config and --embedding override") {
  auto r = run_cli("hf-sing --json " + fixture("ak4.json"));
  CHECK(r.exit_code == 0);
  auto j = report_of(r);
  CHECK(j["stages"]["decomposition"]["fiber"]["genus"] == 2);
  auto r2 = run_cli("hf-sing --json --embedding " + fixture("embedding_genus2.json") + " " +
                    fixture("x2y5.json"));
  CHECK(r2.exit_code == 0);
  CHECK(report_of(r2)["results"].contains("hf"));
  // Without an embedding the HF result is omitted with a warning.
  auto r3 = run_cli("hf-sing --json " + fixture("x2y5.json"));
  CHECK(r3.exit_code == 0);
  auto j3 = report_of(r3);
  CHECK(!j3["results"].contains("hf"));
  CHECK(j3["warnings"].size() == 1);
}

TEST_CASE("splice: characteristic sets and DOT output") {
  auto r = run_cli("splice --json " + fixture("trefoil.json"));
  CHECK(r.exit_code == 0);
  auto j = report_of(r);
  REQUIRE(j["stages"]["characteristic_set"].size() == 2);
  CHECK(j["stages"]["characteristic_set"][0]["chi"] == "-1");
  CHECK(j["stages"]["characteristic_set"][0]["ell"]["num"] == "6");
  CHECK(j["stages"]["characteristic_set"][1]["ell"]["num"] == "1");
  CHECK(j["stages"]["characteristic_set"][1]["ell"]["den"] == "6");

  auto n = run_cli("splice --json " + fixture("node_poly.json"));
  auto jn = report_of(n);
  CHECK(jn["stages"]["diagram"]["gamma_star"] == true);
  REQUIRE(jn["stages"]["characteristic_set"].size() == 1);
  CHECK(jn["stages"]["characteristic_set"][0]["ell"]["num"] == "1");

  auto c = run_cli("splice --json " + fixture("cable.json"));
  auto jc = report_of(c);
  bool has13 = false;
  for (const auto& e : jc["stages"]["diagram"]["edges"])
    for (const auto& w : e["weights"])
      if (w == "13") has13 = true;
  CHECK(has13);

  std::string dotfile = "/tmp/floerhf_test.dot";
  auto d = run_cli("splice --dot " + dotfile + " " + fixture("trefoil.json"));
  CHECK(d.exit_code == 0);
  FILE* f = fopen(dotfile.c_str(), "r");
  REQUIRE(f != nullptr);
  char head[16] = {0};
  REQUIRE(fread(head, 1, 7, f) == 7);
  fclose(f);
  CHECK(std::string(head) == "digraph");
}

TEST_CASE("validate command") {
  CHECK(run_cli("validate " + fixture("hyperelliptic.json")).exit_code == 0);
  CHECK(run_cli("validate " + fixture("parallel_opposite.json")).exit_code == 2);
  CHECK(run_cli("validate " + fixture("trefoil.json")).exit_code == 0);
  CHECK(run_cli("validate /nonexistent.json").exit_code == 1);
}

TEST_CASE("reports are byte-identical across runs and with --jobs") {
  for (const char* cmd : {"hf-sing", "splice"}) {
    for (const char* fx : {"trefoil.json", "node_poly.json", "cable.json"}) {
      auto a = run_cli(std::string(cmd) + " --json " + fixture(fx));
      auto b = run_cli(std::string(cmd) + " --json " + fixture(fx));
      CHECK(a.out == b.out);
    }
  }
  auto seq = run_cli("splice --json " + fixture("trefoil.json") + " " +
                     fixture("node_poly.json") + " " + fixture("case_ii.json"));
  auto par = run_cli("splice --json --jobs 3 " + fixture("trefoil.json") + " " +
                     fixture("node_poly.json") + " " + fixture("case_ii.json"));
  CHECK(seq.out == par.out);
}

TEST_CASE("round trip: re-ingesting emitted puiseux data reproduces the set") {
  auto r = run_cli("splice --json " + fixture("case_ii.json"));
  auto j = report_of(r);
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "puiseux_data";
  doc["branches"] = j["stages"]["puiseux_data_truncated"];
  std::string tmp = "/tmp/floerhf_roundtrip.json";
  {
    FILE* f = fopen(tmp.c_str(), "w");
    REQUIRE(f != nullptr);
    std::string s = doc.dump(2);
    fwrite(s.data(), 1, s.size(), f);
    fclose(f);
  }
  auto r2 = run_cli("splice --json " + tmp);
  CHECK(r2.exit_code == 0);
  auto j2 = report_of(r2);
  CHECK(j2["stages"]["characteristic_set"] == j["stages"]["characteristic_set"]);
}

TEST_CASE("human-readable output mentions the key results") {
  auto r = run_cli("hf-sing " + fixture("trefoil.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("HF ranks: (0,2,1)") != std::string::npos);
  CHECK(r.out.find("HF+ ranks: (0,0,0)") != std::string::npos);
  CHECK(r.out.find("check claim1: pass") != std::string::npos);
}
