#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optlab/algorithms.hpp"
#include "optlab/families.hpp"

using namespace optlab;
using vec::Vec;

namespace {

FunctionInstance quad1d(double c, double xstar) {
  FunctionInstance f;
  f.dim = 1;
  f.value = [c, xstar](const Vec& x) { return 0.5 * c * (x[0] - xstar) * (x[0] - xstar); };
  f.gradient = [c, xstar](const Vec& x) { return Vec{c * (x[0] - xstar)}; };
  f.minimizer_set = MinimizerSet::point({xstar});
  f.certificate.L = c;
  f.certificate.mu = c;
  return f;
}

FunctionInstance quadnd(double c, int d) {
  FunctionInstance f;
  f.dim = d;
  f.value = [c](const Vec& x) { return 0.5 * c * vec::norm2(x); };
  f.gradient = [c](const Vec& x) { return vec::scale(c, x); };
  f.minimizer_set = MinimizerSet::point(vec::zeros(static_cast<std::size_t>(d)));
  f.certificate.L = c;
  f.certificate.mu = c;
  return f;
}

}  // namespace

TEST_CASE("output weights form a distribution") {
  for (long T : {1L, 2L, 17L, 1000L}) {
    double s = 0.0;
    for (long t = 1; t <= T; ++t) s += SgdSchedule::weight(t, T);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("schedules match their formulas") {
  auto r = SgdSchedule::rsi(2.0, 6.0);
  CHECK(r.eta(5) == doctest::Approx(2.0 / (2.0 * (5.0 + 2.0 * 9.0 + 1.0))));
  auto q = SgdSchedule::qcqg(1.0, 202.0, 0.5);
  CHECK(q.eta(3) == doctest::Approx(4.0 / (0.5 * (3.0 + 16.0 * 202.0 / 0.25))));
  CHECK_THROWS_AS(SgdSchedule::rsi(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(SgdSchedule::qcqg(1.0, 2.0, 1.5), std::domain_error);
}

TEST_CASE("noiseless constant-step descent on a quadratic is exact") {
  auto f = quadnd(3.0, 4);
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 4;
  GradientOracle oracle(cfg, f);
  auto sched = SgdSchedule::custom([](long) { return 1.0 / 3.0; });
  Vec x1 = {1.0, -2.0, 0.5, 4.0};
  auto rep = run_sgd(f, oracle, x1, 50, sched, 1);
  CHECK_FALSE(rep.aborted);
  CHECK(rep.queries == 50);
  // one exact Newton-like step: every iterate after the first is 0
  if (rep.chosen_index == 1)
    CHECK(rep.gap == doctest::Approx(f.value(x1)));
  else
    CHECK(rep.gap == 0.0);
}

TEST_CASE("starting at the minimizer stays there under noiseless descent") {
  auto f = quadnd(2.0, 3);
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 3;
  GradientOracle oracle(cfg, f);
  auto rep = run_sgd(f, oracle, {0.0, 0.0, 0.0}, 100, SgdSchedule::rsi(2.0, 2.0), 7);
  CHECK(rep.gap == 0.0);
  CHECK(vec::norm(rep.output) == 0.0);
}

TEST_CASE("decay-schedule descent tracks the deterministic contraction") {
  auto f = quadnd(1.0, 2);
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 2;
  GradientOracle oracle(cfg, f);
  long T = 2000;
  auto rep = run_sgd(f, oracle, {5.0, -5.0}, T, SgdSchedule::rsi(1.0, 1.0), 3);
  // noiseless gap at any t >= T/2 is far below the starting value
  if (rep.chosen_index >= T / 2) CHECK(rep.gap < 1e-3 * f.value({5.0, -5.0}));
  CHECK(rep.gap <= f.value({5.0, -5.0}));
}

TEST_CASE("identical seeds reproduce the run exactly") {
  auto f = quadnd(1.0, 2);
  OracleConfig cfg;
  cfg.sigma = 0.5;
  cfg.d0 = 2;
  cfg.seed = 42;
  GradientOracle o1(cfg, f), o2(cfg, f);
  auto sched = SgdSchedule::rsi(1.0, 2.0);
  auto r1 = run_sgd(f, o1, {1.0, 1.0}, 500, sched, 9);
  auto r2 = run_sgd(f, o2, {1.0, 1.0}, 500, sched, 9);
  CHECK(r1.gap == r2.gap);
  CHECK(r1.chosen_index == r2.chosen_index);
  CHECK(vec::dist(r1.output, r2.output) == 0.0);
}

TEST_CASE("diverging step sizes abort cleanly") {
  auto f = quadnd(4.0, 2);
  OracleConfig cfg;
  cfg.sigma = 0.0;
  cfg.d0 = 2;
  GradientOracle oracle(cfg, f);
  auto sched = SgdSchedule::custom([](long) { return 1e150; });
  auto rep = run_sgd(f, oracle, {1.0, 1.0}, 1000, sched, 1);
  CHECK(rep.aborted);
  CHECK(std::isnan(rep.gap));
  CHECK(rep.queries < 1000);
}

TEST_CASE("derived bisection quantities match their formulas") {
  BisectConfig cfg;
  cfg.T = 20000;
  cfg.D = 4.0;
  cfg.mu = 1.0;
  cfg.L = 4.0;
  cfg.sigma = 1.0;
  cfg.delta = 0.1;
  auto d = bisect_derived(cfg);
  double lg = std::log(4.0 * 16.0 * 20000.0 / 192.0) / std::log(4.0 / 3.0);
  CHECK(d.n == static_cast<int>(std::ceil(lg)));
  CHECK(d.kappa_eff == 4);
  CHECK(d.queries_per_point == cfg.T / (static_cast<long>(d.n) * 5));
  double Delta = 8.0 * std::sqrt(2.0 * d.n * std::log(2.0 * d.n * 5 / 0.1) / 20000.0);
  CHECK(d.Delta == doctest::Approx(Delta).epsilon(1e-12));
  CHECK(bisect_budget_ok(cfg));
  CHECK(bisect_gap_bound(cfg) > 0.0);

  cfg.L = 9.0;
  CHECK(bisect_derived(cfg).kappa_eff == 12);
  cfg.T = 50;
  CHECK_FALSE(bisect_budget_ok(cfg));
}

TEST_CASE("near-noiseless bisection stops immediately at the minimizer") {
  auto f = quad1d(1.0, 0.0);
  BisectConfig cfg;
  cfg.T = 10000;
  cfg.D = 4.0;
  cfg.mu = 1.0;
  cfg.L = 4.0;
  cfg.sigma = 1e-10;
  cfg.delta = 0.1;
  REQUIRE(bisect_budget_ok(cfg));
  OracleConfig ocfg;
  ocfg.sigma = cfg.sigma;
  ocfg.seed = 1;
  GradientOracle oracle(ocfg, f);
  std::vector<BisectIteration> trace;
  auto rep = run_bisect1d(f, oracle, cfg, &trace);
  REQUIRE(!trace.empty());
  CHECK(trace.front().stopped);
  CHECK(rep.output[0] == 0.0);
  CHECK(rep.gap == 0.0);
}

TEST_CASE("near-noiseless bisection keeps the minimizer bracketed and shrinks") {
  for (double xstar : {-0.9, 0.37, 1.4}) {
    auto f = quad1d(2.0, xstar);
    BisectConfig cfg;
    cfg.T = 200000;
    cfg.D = 4.0;
    cfg.mu = 2.0;
    cfg.L = 2.0;
    cfg.sigma = 1e-9;
    cfg.delta = 0.1;
    OracleConfig ocfg;
    ocfg.sigma = cfg.sigma;
    ocfg.seed = 11;
    ocfg.keep_entries = true;
    GradientOracle oracle(ocfg, f);
    std::vector<BisectIteration> trace;
    auto rep = run_bisect1d(f, oracle, cfg, &trace);
    auto der = bisect_derived(cfg);

    double prev_width = cfg.D;
    for (const auto& it : trace) {
      CHECK(it.b_l <= it.b_u);
      CHECK(xstar >= it.b_l - 1e-9);
      CHECK(xstar <= it.b_u + 1e-9);
      double width = it.b_u - it.b_l;
      if (!it.stopped) CHECK(width <= 0.75 * prev_width + 1e-12);
      prev_width = width;
    }
    CHECK(rep.queries <= static_cast<std::uint64_t>(cfg.T));
    for (const auto& e : oracle.log().entries) {
      CHECK(e.x[0] >= -cfg.D / 2.0 - der.Delta / 2.0 - 1e-12);
      CHECK(e.x[0] <= cfg.D / 2.0 + der.Delta / 2.0 + 1e-12);
    }
    CHECK(std::abs(rep.output[0] - xstar) <= std::max(der.Delta, 1e-6));
  }
}

TEST_CASE("noisy bisection meets its gap guarantee in most trials") {
  auto f = quad1d(1.0, 0.8);
  BisectConfig cfg;
  cfg.T = 20000;
  cfg.D = 4.0;
  cfg.mu = 1.0;
  cfg.L = 4.0;
  cfg.sigma = 1.0;
  cfg.delta = 0.1;
  double bound = bisect_gap_bound(cfg);
  const int trials = 200;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    OracleConfig ocfg;
    ocfg.sigma = cfg.sigma;
    ocfg.seed = 1000 + static_cast<std::uint64_t>(t);
    GradientOracle oracle(ocfg, f);
    auto rep = run_bisect1d(f, oracle, cfg, nullptr);
    CHECK(rep.queries <= static_cast<std::uint64_t>(cfg.T));
    if (rep.gap <= bound) ++hits;
  }
  // expect ~ (1 - delta) coverage; allow sampling slack
  CHECK(hits >= static_cast<int>(trials * (1.0 - cfg.delta - 0.07)));
}

TEST_CASE("bisection rejects invalid setups") {
  auto f = quad1d(1.0, 0.0);
  BisectConfig cfg;
  cfg.T = 20;
  cfg.D = 4.0;
  cfg.mu = 1.0;
  cfg.L = 4.0;
  cfg.sigma = 1.0;
  cfg.delta = 0.1;
  OracleConfig ocfg;
  ocfg.sigma = 1.0;
  GradientOracle oracle(ocfg, f);
  CHECK_THROWS_AS(run_bisect1d(f, oracle, cfg, nullptr), std::domain_error);

  auto emb = embed(make_rsi_instance(4.0, 1.0, 1.0, {0.5}, 1), 1);
  cfg.T = 20000;
  CHECK_THROWS_AS(run_bisect1d(emb, oracle, cfg, nullptr), std::domain_error);
}

TEST_CASE("range estimation from the derivative at zero") {
  auto f = quad1d(2.0, -1.5);  // f'(0) = 3
  OracleConfig ocfg;
  ocfg.sigma = 0.0;
  GradientOracle oracle(ocfg, f);
  CHECK(estimate_range_1d(oracle, 2.0, 10, 0.1) == doctest::Approx(3.0));
  // with noise the estimate still covers the true distance with high probability
  ocfg.sigma = 0.5;
  ocfg.seed = 3;
  GradientOracle noisy(ocfg, f);
  double D = estimate_range_1d(noisy, 2.0, 400, 0.05);
  CHECK(D >= 2.0 * std::abs(-1.5));
  CHECK_THROWS_AS(estimate_range_1d(oracle, 0.0, 10, 0.1), std::domain_error);
}

TEST_CASE("grid-sum error bound") {
  CHECK(riemann_gap_bound(10.0, 0.0, 1.0, 51) == doctest::Approx(0.1));
  CHECK(riemann_gap_bound(7.0, -1.0, 1.0, 11) == doctest::Approx(0.5 * 7.0 * 4.0 / 10.0));
  CHECK(riemann_gap_bound(20.0, 0.0, 1.0, 11) == doctest::Approx(1.0));  // L/20 on [0,1]
  CHECK_THROWS_AS(riemann_gap_bound(1.0, 1.0, 0.0, 10), std::domain_error);
  CHECK_THROWS_AS(riemann_gap_bound(1.0, 0.0, 1.0, 1), std::domain_error);
}
