#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "optlab/families.hpp"
#include "optlab/oracle.hpp"

using namespace optlab;
using vec::Vec;

namespace {

FunctionInstance quad2() {
  FunctionInstance f;
  f.dim = 2;
  f.value = [](const Vec& x) { return 0.5 * vec::norm2(x); };
  f.gradient = [](const Vec& x) { return x; };
  f.minimizer_set = MinimizerSet::point({0.0, 0.0});
  f.certificate.L = 1.0;
  f.certificate.mu = 1.0;
  return f;
}

}  // namespace

TEST_CASE("noiseless oracle returns exact gradients") {
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 2;
  GradientOracle oracle(cfg, quad2());
  Vec x = {1.5, -2.25};
  CHECK(vec::dist(oracle.query(x), x) == 0.0);
  CHECK(oracle.queries_used() == 1);
}

TEST_CASE("noise statistics match the advertised law") {
  OracleConfig cfg;
  cfg.sigma = 2.0;
  cfg.d0 = 2;
  cfg.seed = 99;
  auto f = quad2();
  GradientOracle oracle(cfg, f);
  Vec x = {0.7, 0.3};
  const int N = 100000;
  double m0 = 0, m1 = 0, s0 = 0, s1 = 0;
  for (int i = 0; i < N; ++i) {
    Vec g = oracle.query(x);
    double e0 = g[0] - x[0], e1 = g[1] - x[1];
    m0 += e0;
    m1 += e1;
    s0 += e0 * e0;
    s1 += e1 * e1;
  }
  double var = cfg.sigma * cfg.sigma / cfg.d0;  // per coordinate
  double sd = std::sqrt(var);
  CHECK(std::abs(m0 / N) <= 4.0 * sd / std::sqrt(static_cast<double>(N)));
  CHECK(std::abs(m1 / N) <= 4.0 * sd / std::sqrt(static_cast<double>(N)));
  CHECK(s0 / N == doctest::Approx(var).epsilon(0.05));
  CHECK(s1 / N == doctest::Approx(var).epsilon(0.05));
}

TEST_CASE("noise only touches the leading block in embedded dimensions") {
  auto f = embed(make_rsi_instance(4.0, 1.0, 1.0, {0.5, 0.5}, 2), 5);
  OracleConfig cfg;
  cfg.sigma = 1.0;
  cfg.d0 = 2;
  cfg.seed = 3;
  GradientOracle oracle(cfg, f);
  Vec x = {0.1, 0.2, 3.0, -1.0, 2.0};
  Vec exact = f.gradient(x);
  for (int i = 0; i < 50; ++i) {
    Vec g = oracle.query(x);
    CHECK(g[2] == exact[2]);
    CHECK(g[3] == exact[3]);
    CHECK(g[4] == exact[4]);
    CHECK(g[0] != exact[0]);
  }
}

TEST_CASE("same seed reproduces the stream bit for bit") {
  OracleConfig cfg;
  cfg.sigma = 1.3;
  cfg.d0 = 2;
  cfg.seed = 777;
  auto f = quad2();
  GradientOracle a(cfg, f), b(cfg, f);
  Vec x = {0.4, -0.9};
  for (int i = 0; i < 100; ++i) {
    Vec ga = a.query(x), gb = b.query(x);
    CHECK(ga[0] == gb[0]);
    CHECK(ga[1] == gb[1]);
  }
  cfg.seed = 778;
  GradientOracle c(cfg, f);
  CHECK(c.query(x)[0] != a.query(x)[0]);
}

TEST_CASE("budget is enforced") {
  OracleConfig cfg;
  cfg.budget = 5;
  cfg.d0 = 2;
  GradientOracle oracle(cfg, quad2());
  Vec x = {1.0, 1.0};
  for (int i = 0; i < 5; ++i) oracle.query(x);
  CHECK(oracle.budget_remaining() == 0);
  CHECK_THROWS_AS(oracle.query(x), BudgetExhausted);
  CHECK(oracle.queries_used() == 5);
  CHECK_THROWS_AS(oracle.query_1d(0.0), BudgetExhausted);
}

TEST_CASE("query log counts regions and serializes to csv") {
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 2;
  cfg.keep_entries = true;
  GradientOracle oracle(cfg, quad2());
  RegionIndex regions;
  regions.centers = {{2.0, 0.0}, {-2.0, 0.0}};
  regions.radius = 1.0;
  oracle.register_regions(regions);

  oracle.query({2.1, 0.3});   // region 0
  oracle.query({-1.9, 0.0});  // region 1
  oracle.query({-2.5, 0.1});  // region 1
  oracle.query({0.0, 0.0});   // outside every ball

  const auto& log = oracle.log();
  CHECK(log.total == 4);
  CHECK(log.region_counts.at(0) == 1);
  CHECK(log.region_counts.at(1) == 2);
  CHECK(log.region_counts.count(-1) == 0);  // off-region queries only show in total
  CHECK(log.entries.size() == 4);
  CHECK(log.entries[1].region_id == 1);

  std::istringstream csv(log.to_csv());
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x,g,region_id");
  std::getline(csv, line);
  CHECK(line.substr(0, 2) == "1,");
  int rows = 1;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("region lookup uses only the leading coordinates") {
  RegionIndex regions;
  regions.centers = {{1.0, 1.0}};
  regions.radius = 0.5;
  CHECK(regions.locate({1.1, 0.9, 100.0, -50.0}) == 0);
  CHECK(regions.locate({3.0, 3.0}) == -1);
}

TEST_CASE("scalar queries carry full-variance noise") {
  FunctionInstance f;
  f.dim = 1;
  f.value = [](const Vec& x) { return x[0] * x[0]; };
  f.gradient = [](const Vec& x) { return Vec{2.0 * x[0]}; };
  f.minimizer_set = MinimizerSet::point({0.0});

  OracleConfig cfg;
  cfg.sigma = 0.0;
  GradientOracle exact(cfg, f);
  CHECK(exact.query_1d(3.0) == 6.0);

  cfg.sigma = 1.5;
  cfg.seed = 5;
  GradientOracle noisy(cfg, f);
  const int N = 100000;
  double s = 0;
  for (int i = 0; i < N; ++i) {
    double e = noisy.query_1d(3.0) - 6.0;
    s += e * e;
  }
  CHECK(s / N == doctest::Approx(cfg.sigma * cfg.sigma).epsilon(0.05));
}
