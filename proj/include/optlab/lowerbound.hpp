#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "optlab/algorithms.hpp"
#include "optlab/families.hpp"
#include "optlab/oracle.hpp"

namespace optlab {

// KL between N(mean_a, (sigma^2/d0) I) and N(mean_b, (sigma^2/d0) I):
// (d0 / (2 sigma^2)) ||mean_a - mean_b||^2.
double kl_gaussian(const Vec& mean_a, const Vec& mean_b, double sigma, int d0);

struct KlBudgetEntry {
  int instance = 0;
  double n_inside = 0.0;  // queries that landed in region i
  double inside_sup = 0.0;
  double outside_sup = 0.0;
  double kl_upper = 0.0;
};

struct KlBudget {
  std::vector<KlBudgetEntry> per_instance;
  double average = 0.0;
  std::uint64_t total_queries = 0;
};

// Chain-rule upper bound on KL(Q, P_i) per instance, from region counts:
// (d0/(2 sigma^2)) (N_i inside_sup^2 + (T - N_i) outside_sup^2).
KlBudget divergence_budget(const QueryLog& log, const HardFamily& family);

// Closed-form average budget when Sum N_i <= T is used at its worst case.
double kl_average_closed_form(const HardFamily& family, std::uint64_t T);

// max(0, 1 - 1/m - sqrt(avg_kl)): lower bound on average misidentification.
double pinsker_misid_lower(double avg_kl, int m);

struct TheoreticalBound {
  double delta_star = 0.0;
  double bound = 0.0;
};

// Fully explicit bound with all constants spelled out. qc_T_constant: the
// budget-threshold constant for the bounded-domain family (default 35).
TheoreticalBound theoretical_bound(FamilyKind kind, double mu, double tau, double L,
                                   double sigma, double D, std::uint64_t T, int d,
                                   double qc_T_constant = 35.0);

struct GameContext {
  const HardFamily* family = nullptr;
  int instance_index = -1;
  long T = 0;
};

// Plays T oracle queries and returns the candidate minimizer.
using GameAlgorithm = std::function<Vec(GradientOracle&, const GameContext&)>;

struct GameTrial {
  int instance = 0;
  Vec output;
  double gap = 0.0;
  bool identified = false;
  bool failed = false;
  std::string message;
};

struct GameResult {
  int trials = 0;
  double avg_gap = 0.0;
  double misid_rate = 0.0;
  std::vector<GameTrial> per_trial;
};

GameResult identification_game(const GameAlgorithm& algorithm, const HardFamily& family,
                               long T, int trials, std::uint64_t seed, bool parallel = true);

// Test doubles.
GameAlgorithm clairvoyant_algorithm();      // outputs the true center
GameAlgorithm blind_algorithm();            // outputs the origin
GameAlgorithm sgd_game_algorithm(const Vec& x1, SgdSchedule::Kind kind);

}  // namespace optlab
