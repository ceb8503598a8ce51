#include "optlab/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace optlab {

SgdSchedule SgdSchedule::rsi(double mu, double L) {
  if (!(L >= mu && mu > 0.0)) throw std::domain_error("SgdSchedule::rsi: need L >= mu > 0");
  SgdSchedule s;
  s.kind = Kind::RSI;
  double shift = 2.0 * L * L / (mu * mu) + 1.0;
  s.eta = [mu, shift](long t) { return 2.0 / (mu * (static_cast<double>(t) + shift)); };
  return s;
}

SgdSchedule SgdSchedule::qcqg(double mu, double L, double tau) {
  if (!(L >= mu && mu > 0.0)) throw std::domain_error("SgdSchedule::qcqg: need L >= mu > 0");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("SgdSchedule::qcqg: tau in (0,1]");
  SgdSchedule s;
  s.kind = Kind::QCQG;
  double shift = 16.0 * L / (tau * tau * mu);
  double c = 4.0 / (tau * mu);
  s.eta = [c, shift](long t) { return c / (static_cast<double>(t) + shift); };
  return s;
}

SgdSchedule SgdSchedule::custom(std::function<double(long)> eta) {
  SgdSchedule s;
  s.kind = Kind::Custom;
  s.eta = std::move(eta);
  return s;
}

RunReport run_sgd(const FunctionInstance& instance, GradientOracle& oracle, const Vec& x1,
                  long T, const SgdSchedule& schedule, std::uint64_t output_seed) {
  if (T < 1) throw std::domain_error("run_sgd: T must be >= 1");

  RunReport rep;
  rep.seed = oracle.config().seed;

  // Draw the output index t* with P(t) = 2t/(T(T+1)) up front; the draw
  // is independent of the trajectory so this matches sampling afterwards.
  Rng out_rng(output_seed, 0x73676474ULL);
  double u = out_rng.uniform();
  double Td = static_cast<double>(T);
  long tstar = static_cast<long>(std::ceil(0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * u * Td * (Td + 1.0)))));
  tstar = std::clamp(tstar, 1L, T);
  rep.chosen_index = tstar;

  Vec x = x1;
  Vec xhat = x1;
  for (long t = 1; t <= T; ++t) {
    if (t == tstar) xhat = x;
    Vec g = oracle.query(x);
    vec::axpy(-schedule.eta(t), g, x);
    if (!vec::all_finite(x)) {
      rep.aborted = true;
      rep.message = "non-finite iterate at t=" + std::to_string(t);
      rep.queries = oracle.queries_used();
      rep.output = x;
      rep.gap = std::numeric_limits<double>::quiet_NaN();
      return rep;
    }
  }
  rep.output = xhat;
  rep.gap = instance.value(xhat) - instance.f_star;
  rep.queries = oracle.queries_used();
  return rep;
}

namespace {

double log43(double x) { return std::log(x) / std::log(4.0 / 3.0); }

}  // namespace

BisectDerived bisect_derived(const BisectConfig& cfg) {
  if (!(cfg.T >= 1 && cfg.D > 0.0 && cfg.mu > 0.0 && cfg.L >= cfg.mu && cfg.sigma > 0.0 &&
        cfg.delta > 0.0 && cfg.delta < 1.0))
    throw std::domain_error("bisect: invalid configuration");
  BisectDerived d;
  double Td = static_cast<double>(cfg.T);
  d.n = static_cast<int>(
      std::ceil(log43(cfg.L * cfg.mu * cfg.D * cfg.D * Td / (192.0 * cfg.sigma * cfg.sigma))));
  if (d.n < 1) d.n = 1;
  d.kappa_eff = 4 * static_cast<int>(std::ceil(cfg.L / cfg.mu / 4.0));
  double npts = static_cast<double>(d.kappa_eff + 1);
  d.Delta = 8.0 / cfg.mu * cfg.sigma *
            std::sqrt(2.0 * d.n * std::log(2.0 * d.n * npts / cfg.delta) / Td);
  d.queries_per_point = cfg.T / (static_cast<long>(d.n) * (d.kappa_eff + 1));
  return d;
}

bool bisect_budget_ok(const BisectConfig& cfg) {
  BisectDerived d = bisect_derived(cfg);
  double Td = static_cast<double>(cfg.T);
  double rhs = 2.0 * (d.kappa_eff + 1) *
               log43(cfg.L * cfg.mu * cfg.mu * cfg.D * cfg.D * Td / (192.0 * cfg.sigma * cfg.sigma));
  return Td >= rhs;
}

double bisect_gap_bound(const BisectConfig& cfg) {
  BisectDerived d = bisect_derived(cfg);
  double Td = static_cast<double>(cfg.T);
  double lg = log43(cfg.L * cfg.mu * cfg.D * cfg.D * Td / (192.0 * cfg.sigma * cfg.sigma));
  return 128.0 * cfg.sigma * cfg.sigma / (cfg.mu * Td) * lg *
         std::log(d.kappa_eff * lg / cfg.delta);
}

RunReport run_bisect1d(const FunctionInstance& instance, GradientOracle& oracle,
                       const BisectConfig& cfg, std::vector<BisectIteration>* trace) {
  if (instance.dim != 1) throw std::domain_error("run_bisect1d: instance must be 1-D");
  if (instance.minimizer_set.kind == MinimizerSet::Kind::Affine)
    throw std::domain_error("run_bisect1d: minimizer set must be an interval or a point");
  if (!bisect_budget_ok(cfg))
    throw std::domain_error("run_bisect1d: T below the budget threshold for these parameters");

  BisectDerived der = bisect_derived(cfg);
  const int n = der.n;
  const int kappa = der.kappa_eff;
  const int npts = kappa + 1;
  const double Delta = der.Delta;
  const long q = der.queries_per_point;
  if (q < 1) throw std::domain_error("run_bisect1d: budget too small for one query per grid point");

  RunReport rep;
  rep.seed = oracle.config().seed;

  double a = 0.0, b_l = -cfg.D / 2.0, b_u = cfg.D / 2.0;
  const double thresh = 0.5 * cfg.mu * Delta;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> grid(static_cast<std::size_t>(npts));
  std::vector<double> ghat(static_cast<std::size_t>(npts));
  std::vector<double> agg(static_cast<std::size_t>(npts));

  auto clampi = [npts](int i) { return std::clamp(i, 1, npts); };

  for (int k = 1; k <= n; ++k) {
    double Dcur = a - b_l;
    double half = std::min(Delta / 2.0, Dcur / 2.0);
    double gamma = 2.0 * half;

    for (int j = 0; j < npts; ++j)
      grid[static_cast<std::size_t>(j)] = a - half + gamma * j / kappa;

    try {
      for (int j = 0; j < npts; ++j) {
        double s = 0.0;
        for (long r = 0; r < q; ++r) s += oracle.query_1d(grid[static_cast<std::size_t>(j)]);
        ghat[static_cast<std::size_t>(j)] = s / static_cast<double>(q);
      }
    } catch (const BudgetExhausted&) {
      rep.aborted = true;
      rep.message = "budget exhausted at iteration " + std::to_string(k);
      break;
    }

    // aggregate means over the four index-window cases (1-based i)
    auto window_mean = [&](int lo, int hi) {
      lo = clampi(lo);
      hi = clampi(hi);
      double s = 0.0;
      for (int j = lo; j <= hi; ++j) s += ghat[static_cast<std::size_t>(j - 1)];
      return s / static_cast<double>(hi - lo + 1);
    };
    for (int i = 1; i <= npts; ++i) {
      int lo, hi;
      if (i <= kappa / 4 - 1) {
        lo = i;
        hi = i + kappa / 4;
      } else if (i <= kappa / 2) {
        lo = i;
        hi = 3 * kappa / 4;
      } else if (i <= 3 * kappa / 4) {
        lo = kappa / 4;
        hi = i;
      } else {
        lo = i - kappa / 4;
        hi = i;
      }
      agg[static_cast<std::size_t>(i - 1)] = window_mean(lo, hi);
    }

    int z = kappa / 4;
    for (int i = kappa / 4; i <= 3 * kappa / 4; ++i)
      if (std::abs(agg[static_cast<std::size_t>(i - 1)]) >
          std::abs(agg[static_cast<std::size_t>(z - 1)]))
        z = i;
    double gz = agg[static_cast<std::size_t>(z - 1)];

    bool stopped = false;
    if (std::abs(gz) <= thresh) {
      double mx = -inf, mn = inf;
      for (int i = 1; i <= kappa / 4 - 1; ++i)
        mx = std::max(mx, agg[static_cast<std::size_t>(i - 1)]);
      for (int i = 3 * kappa / 4 + 1; i <= npts; ++i)
        mn = std::min(mn, agg[static_cast<std::size_t>(i - 1)]);
      if (mx < thresh && mn >= -thresh) {
        stopped = true;
      } else if (mx >= thresh) {
        b_u = a;
      } else {
        b_l = a;
      }
    } else if (gz >= 0.0) {
      b_u = a + gamma / 4.0;
    } else {
      b_l = a - gamma / 4.0;
    }

    if (trace) trace->push_back({k, a, b_l, b_u, gz, stopped});
    if (stopped) break;
    a = 0.5 * (b_l + b_u);
  }

  rep.output = {a};
  rep.gap = instance.value({a}) - instance.f_star;
  rep.queries = oracle.queries_used();
  return rep;
}

double estimate_range_1d(GradientOracle& oracle, double mu, long T0, double delta) {
  if (!(mu > 0.0 && T0 >= 1 && delta > 0.0 && delta < 1.0))
    throw std::domain_error("estimate_range_1d: invalid parameters");
  double s = 0.0;
  for (long t = 0; t < T0; ++t) s += oracle.query_1d(0.0);
  double mean = s / static_cast<double>(T0);
  double slack = oracle.config().sigma *
                 std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(T0));
  return 2.0 * (std::abs(mean) + slack) / mu;
}

double riemann_gap_bound(double L, double a, double b, int n) {
  if (!(n >= 2 && a < b)) throw std::domain_error("riemann_gap_bound: need n >= 2 and a < b");
  return 0.5 * L * (b - a) * (b - a) / static_cast<double>(n - 1);
}

}  // namespace optlab
