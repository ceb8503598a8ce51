#include "optlab/lowerbound.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab {

namespace {

double log_base(double x, double base) { return std::log(x) / std::log(base); }

}  // namespace

double kl_gaussian(const Vec& mean_a, const Vec& mean_b, double sigma, int d0) {
  if (!(sigma > 0.0)) throw std::domain_error("kl_gaussian: sigma must be positive");
  if (mean_a.size() != mean_b.size())
    throw std::invalid_argument("kl_gaussian: mean dimensions differ");
  return static_cast<double>(d0) / (2.0 * sigma * sigma) * vec::norm2(vec::sub(mean_a, mean_b));
}

KlBudget divergence_budget(const QueryLog& log, const HardFamily& family) {
  const auto& p = family.params;
  const double T = static_cast<double>(log.total);
  const double coef = static_cast<double>(p.d0) / (2.0 * p.sigma * p.sigma);
  const double in = family.inside_sup();
  const double out = family.outside_sup();

  KlBudget b;
  b.total_queries = log.total;
  b.per_instance.reserve(static_cast<std::size_t>(p.m));
  double sum = 0.0;
  for (int i = 0; i < p.m; ++i) {
    auto it = log.region_counts.find(i);
    double ni = it == log.region_counts.end() ? 0.0 : static_cast<double>(it->second);
    KlBudgetEntry e;
    e.instance = i;
    e.n_inside = ni;
    e.inside_sup = in;
    e.outside_sup = out;
    e.kl_upper = coef * (ni * in * in + (T - ni) * out * out);
    sum += e.kl_upper;
    b.per_instance.push_back(e);
  }
  b.average = p.m > 0 ? sum / static_cast<double>(p.m) : 0.0;
  return b;
}

double kl_average_closed_form(const HardFamily& family, std::uint64_t T) {
  const auto& p = family.params;
  const double Td = static_cast<double>(T);
  const double d0 = static_cast<double>(p.d0);
  const double m = static_cast<double>(p.m);
  const double s2 = p.sigma * p.sigma;
  switch (p.kind) {
    case FamilyKind::QCQG:
      return 169.0 * 169.0 * d0 * p.mu * p.mu * p.Delta * p.Delta / (2.0 * s2) *
             (p.tau * p.tau + 1.0 / m) * Td;
    case FamilyKind::RSI: {
      double kappa = p.L / p.mu;
      return d0 * p.mu * p.mu * p.Delta * p.Delta / (2.0 * s2) *
             (kappa * kappa / m + 25.0) * Td;
    }
    case FamilyKind::QC:
      return d0 * p.L * p.L * p.Delta * p.Delta / (2.0 * s2) * (1.0 / m + p.tau * p.tau) * Td;
  }
  return 0.0;
}

double pinsker_misid_lower(double avg_kl, int m) {
  if (!(avg_kl >= 0.0)) throw std::domain_error("pinsker_misid_lower: avg_kl must be >= 0");
  if (m < 2) throw std::domain_error("pinsker_misid_lower: m must be >= 2");
  double v = 1.0 - 1.0 / static_cast<double>(m) - std::sqrt(avg_kl);
  return v > 0.0 ? v : 0.0;
}

TheoreticalBound theoretical_bound(FamilyKind kind, double mu, double tau, double L,
                                   double sigma, double D, std::uint64_t T, int d,
                                   double qc_T_constant) {
  if (!(sigma > 0.0)) throw std::domain_error("theoretical_bound: sigma must be positive");
  if (T < 1) throw std::domain_error("theoretical_bound: T must be >= 1");
  const double Td = static_cast<double>(T);
  TheoreticalBound out;

  switch (kind) {
    case FamilyKind::QCQG: {
      if (!(tau > 0.0 && tau <= 1.0))
        throw std::domain_error("theoretical_bound: tau must lie in (0,1]");
      if (!(L / mu >= 202.0))
        throw std::domain_error("theoretical_bound: QCQG requires L/mu >= 202");
      if (d < 3.0 * log_base(2.0 / tau, 1.25))
        throw std::domain_error("theoretical_bound: dimension below 3 log_{5/4}(2/tau)");
      double lg = log_base(5.0 / (tau * tau), 1.25);
      double ds = 1.0 / (4.0 * std::sqrt(10711.0) * mu * tau) / std::sqrt(lg / (sigma * sigma) * Td);
      double bracket = 0.5 - std::sqrt(10711.0 * lg / (sigma * sigma) * mu * mu * tau * tau * ds * ds * Td);
      out.delta_star = ds;
      out.bound = 169.0 / 2.0 * mu * ds * ds * bracket;
      break;
    }
    case FamilyKind::RSI: {
      if (!(L >= mu && mu > 0.0))
        throw std::domain_error("theoretical_bound: RSI requires L >= mu > 0");
      double kappa = L / mu;
      if (d < 2.0 * log_base(2.0 * kappa, 1.25))
        throw std::domain_error("theoretical_bound: dimension below 2 log_{5/4}(2 kappa)");
      double lg = log_base(5.0 * kappa * kappa, 1.25);
      double ds = 1.0 / (4.0 * mu) * std::sqrt(sigma * sigma / (26.0 * lg * Td));
      double bracket = 0.5 - std::sqrt(26.0 * lg / (sigma * sigma) * mu * mu * ds * ds * Td);
      out.delta_star = ds;
      out.bound = 0.5 * L * ds * ds * bracket;
      break;
    }
    case FamilyKind::QC: {
      if (!(tau > 0.0 && tau <= 1.0))
        throw std::domain_error("theoretical_bound: tau must lie in (0,1]");
      if (!(D > 0.0)) throw std::domain_error("theoretical_bound: QC requires D > 0");
      if (d < log_base(4.0 / (tau * tau), 16.0 / 15.0))
        throw std::domain_error("theoretical_bound: dimension below log_{16/15}(4/tau^2)");
      double tmin = qc_T_constant * sigma * sigma /
                    (L * L * D * D * log_base(2.0 / tau, 16.0 / 15.0));
      if (Td < tmin)
        throw std::domain_error("theoretical_bound: T below the budget threshold for QC");
      double lg = log_base(5.0 / (tau * tau), 16.0 / 15.0);
      double ds = 2.0 * sigma / (4.0 * std::sqrt(3.0) * L * tau * std::sqrt(8.0 * lg * Td));
      if (ds > D / 16.0)
        throw std::domain_error("theoretical_bound: optimal Delta exceeds D/16");
      double bracket =
          0.5 - std::sqrt(3.0 * lg / (4.0 * sigma * sigma) * L * L * tau * tau * ds * ds * Td);
      out.delta_star = ds;
      out.bound = 7.0 / 32.0 * L * D * ds * bracket;
      break;
    }
  }
  return out;
}

GameResult identification_game(const GameAlgorithm& algorithm, const HardFamily& family,
                               long T, int trials, std::uint64_t seed, bool parallel) {
  if (trials < 1) throw std::domain_error("identification_game: trials must be >= 1");
  const auto& p = family.params;
  std::vector<GameTrial> results(static_cast<std::size_t>(trials));

  auto run_trial = [&](int t) {
    Rng pick(seed, 2ULL * static_cast<std::uint64_t>(t));
    int i = static_cast<int>(pick.integer(static_cast<std::uint64_t>(p.m)));
    GameTrial tr;
    tr.instance = i;
    const auto& Fi = family.instances[static_cast<std::size_t>(i)];
    OracleConfig oc;
    oc.sigma = p.sigma;
    oc.d0 = p.d0;
    oc.seed = mix_seed(seed, 2ULL * static_cast<std::uint64_t>(t) + 1ULL);
    oc.budget = static_cast<std::uint64_t>(T);
    GradientOracle oracle(oc, Fi);
    GameContext ctx{&family, i, T};
    try {
      tr.output = algorithm(oracle, ctx);
      tr.gap = Fi.value(tr.output) - Fi.f_star;
      double r = 0.0;
      const Vec& zi = p.centers[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < zi.size(); ++k) {
        double dk = tr.output.at(k) - zi[k];
        r += dk * dk;
      }
      tr.identified = std::sqrt(r) <= family.region_radius();
    } catch (const std::exception& ex) {
      tr.failed = true;
      tr.message = ex.what();
    }
    results[static_cast<std::size_t>(t)] = std::move(tr);
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    for (int t = 0; t < trials; ++t) run_trial(t);
  }

  GameResult g;
  g.trials = trials;
  g.per_trial = std::move(results);
  double gap_sum = 0.0;
  int misid = 0, ok = 0;
  for (const auto& tr : g.per_trial) {
    if (tr.failed) continue;
    ++ok;
    gap_sum += tr.gap;
    if (!tr.identified) ++misid;
  }
  g.avg_gap = ok > 0 ? gap_sum / ok : 0.0;
  g.misid_rate = ok > 0 ? static_cast<double>(misid) / ok : 0.0;
  return g;
}

GameAlgorithm clairvoyant_algorithm() {
  return [](GradientOracle& oracle, const GameContext& ctx) {
    (void)oracle;
    Vec z = ctx.family->params.centers[static_cast<std::size_t>(ctx.instance_index)];
    z.resize(static_cast<std::size_t>(ctx.family->params.d), 0.0);
    return z;
  };
}

GameAlgorithm blind_algorithm() {
  return [](GradientOracle& oracle, const GameContext& ctx) {
    (void)oracle;
    return Vec(static_cast<std::size_t>(ctx.family->params.d), 0.0);
  };
}

GameAlgorithm sgd_game_algorithm(const Vec& x1, SgdSchedule::Kind kind) {
  return [x1, kind](GradientOracle& oracle, const GameContext& ctx) {
    const auto& p = ctx.family->params;
    SgdSchedule sched = kind == SgdSchedule::Kind::RSI
                            ? SgdSchedule::rsi(p.mu, p.L)
                            : SgdSchedule::qcqg(p.mu, p.L, p.tau);
    Vec start = x1;
    start.resize(static_cast<std::size_t>(p.d), 0.0);
    const auto& Fi = ctx.family->instances[static_cast<std::size_t>(ctx.instance_index)];
    RunReport rep = run_sgd(Fi, oracle, start, ctx.T, sched, oracle.config().seed + 1);
    return rep.output;
  };
}

}  // namespace optlab
