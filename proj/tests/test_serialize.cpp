#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "optlab/serialize.hpp"

using namespace optlab;
using vec::Vec;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("family parameters survive a json round trip bit for bit") {
  HardFamilyParams p;
  p.kind = FamilyKind::QCQG;
  p.mu = 0.1 + 0.2;  // deliberately non-representable sum
  p.L = 202.0 * (0.1 + 0.2);
  p.tau = 1.0 / 3.0;
  p.Delta = std::nextafter(1.0, 2.0);
  p.D = 0.0;
  p.sigma = M_PI;
  p.d0 = 7;
  p.d = 12;
  p.m = 2;
  p.centers = {{1.0 / 7.0, -2.0 / 3.0}, {1e-300, 5e300}};

  auto j = params_to_json(p);
  auto text = j.dump();
  auto q = params_from_json(json::parse(text));

  CHECK(q.kind == p.kind);
  CHECK(same_bits(q.mu, p.mu));
  CHECK(same_bits(q.L, p.L));
  CHECK(same_bits(q.tau, p.tau));
  CHECK(same_bits(q.Delta, p.Delta));
  CHECK(same_bits(q.sigma, p.sigma));
  CHECK(q.d0 == 7);
  CHECK(q.d == 12);
  CHECK(q.m == 2);
  REQUIRE(q.centers.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK(same_bits(q.centers[i][k], p.centers[i][k]));
}

TEST_CASE("check report serialization") {
  CheckReport r;
  r.property = "qc";
  r.passed = false;
  r.worst_violation = 0.125;
  r.witness = {1.0, 2.0};
  r.samples_used = 42;
  auto j = report_to_json(r);
  CHECK(j["property"] == "qc");
  CHECK(j["passed"] == false);
  CHECK(j["worst_violation"] == 0.125);
  CHECK(j["witness"].size() == 2);
  CHECK(j["samples_used"] == 42);
}

TEST_CASE("game result serialization") {
  GameResult g;
  g.trials = 2;
  g.avg_gap = 0.5;
  g.misid_rate = 1.0;
  g.per_trial.resize(2);
  g.per_trial[0].instance = 1;
  g.per_trial[0].gap = 0.25;
  g.per_trial[1].failed = true;
  g.per_trial[1].message = "boom";
  auto j = game_to_json(g);
  CHECK(j["trials"] == 2);
  CHECK(j["per_trial"].size() == 2);
  CHECK(j["per_trial"][0]["instance"] == 1);
  CHECK(j["per_trial"][1]["failed"] == true);
}

TEST_CASE("toml subset parsing") {
  std::string text = R"(# experiment setup
kind = "rate-sweep"   # trailing comment
trials = 200

[family]
name = "rsi"
mu = 1.5
L = 6.0
grid = [1024, 2048, 4096]
weights = [0.5, 0.25]
exact = true
label = "a # not a comment"
)";
  auto j = toml_lite_parse(text);
  CHECK(j["kind"] == "rate-sweep");
  CHECK(j["trials"] == 200);
  CHECK(j["trials"].is_number_integer());
  CHECK(j["family"]["name"] == "rsi");
  CHECK(j["family"]["mu"] == 1.5);
  CHECK(j["family"]["grid"].size() == 3);
  CHECK(j["family"]["grid"][1] == 2048);
  CHECK(j["family"]["weights"][0] == 0.5);
  CHECK(j["family"]["exact"] == true);
  CHECK(j["family"]["label"] == "a # not a comment");
}

TEST_CASE("toml parse errors carry line numbers") {
  try {
    toml_lite_parse("good = 1\nbad line without equals\n");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("config loading dispatches on the extension") {
  {
    std::ofstream out("cfg_test.toml");
    out << "kind = \"verify\"\n[family]\nmu = 2.0\n";
  }
  {
    std::ofstream out("cfg_test.json");
    out << R"({"kind": "verify", "family": {"mu": 3.0}})";
  }
  auto t = load_config_file("cfg_test.toml");
  CHECK(t["family"]["mu"] == 2.0);
  auto j = load_config_file("cfg_test.json");
  CHECK(j["family"]["mu"] == 3.0);
  CHECK_THROWS(load_config_file("no_such_file.toml"));
}
