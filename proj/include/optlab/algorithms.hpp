#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "optlab/instance.hpp"
#include "optlab/oracle.hpp"

namespace optlab {

struct SgdSchedule {
  enum class Kind { RSI, QCQG, Custom };
  Kind kind = Kind::Custom;
  std::function<double(long)> eta;  // step size at t = 1..T

  // eta_t = 2 / (mu (t + 2 L^2/mu^2 + 1))
  static SgdSchedule rsi(double mu, double L);
  // eta_t = 4 / (tau mu (t + 16 L / (tau^2 mu)))
  static SgdSchedule qcqg(double mu, double L, double tau);
  static SgdSchedule custom(std::function<double(long)> eta);

  // output-sampling weight w_t = 2t / (T (T+1))
  static double weight(long t, long T) {
    return 2.0 * static_cast<double>(t) /
           (static_cast<double>(T) * (static_cast<double>(T) + 1.0));
  }
};

struct RunReport {
  Vec output;
  double gap = 0.0;
  std::uint64_t queries = 0;
  std::uint64_t seed = 0;
  long chosen_index = -1;  // SGD: which iterate was sampled as output
  bool aborted = false;
  std::string message;
};

// Weighted-output SGD. The returned point is x_t sampled with weight w_t.
RunReport run_sgd(const FunctionInstance& instance, GradientOracle& oracle, const Vec& x1,
                  long T, const SgdSchedule& schedule, std::uint64_t output_seed);

struct BisectConfig {
  long T = 0;
  double D = 0.0;
  double mu = 0.0;
  double L = 0.0;
  double sigma = 0.0;
  double delta = 0.1;
};

struct BisectIteration {
  int k = 0;
  double a = 0.0, b_l = 0.0, b_u = 0.0;
  double gz = 0.0;
  bool stopped = false;
};

struct BisectDerived {
  int n = 0;           // ceil(log_{4/3}(L mu D^2 T / (192 sigma^2)))
  int kappa_eff = 0;   // 4 ceil((L/mu)/4)
  double Delta = 0.0;  // (8/mu) sigma sqrt(2 n log(2 n (kappa_eff+1)/delta) / T)
  long queries_per_point = 0;
};

BisectDerived bisect_derived(const BisectConfig& cfg);

// Admissibility threshold on the budget: T >= 2 (kappa+1) log_{4/3}(L mu^2 D^2 T / (192 sigma^2)).
bool bisect_budget_ok(const BisectConfig& cfg);

// Final-gap guarantee evaluated numerically:
// (128 sigma^2 / (mu T)) log_{4/3}(L mu D^2 T/(192 sigma^2)) log(kappa log_{4/3}(...)/delta).
double bisect_gap_bound(const BisectConfig& cfg);

RunReport run_bisect1d(const FunctionInstance& instance, GradientOracle& oracle,
                       const BisectConfig& cfg, std::vector<BisectIteration>* trace = nullptr);

// Budgeted derivative probe at zero: D = 2(|mean| + sigma sqrt(2 log(2/delta)/T0))/mu.
double estimate_range_1d(GradientOracle& oracle, double mu, long T0, double delta);

// (L/2) (b-a)^2 / (n-1): worst-case gap between the integral of an
// L-Lipschitz derivative and its n-point grid sum.
double riemann_gap_bound(double L, double a, double b, int n);

}  // namespace optlab
