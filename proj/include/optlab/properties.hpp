#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "optlab/families.hpp"
#include "optlab/instance.hpp"

namespace optlab {

struct CheckReport {
  std::string property;
  bool passed = false;
  double worst_violation = 0.0;
  Vec witness;
  int samples_used = 0;
};

struct CheckOptions {
  int samples = 10000;
  double tol = 1e-9;
  std::uint64_t seed = 1234;
  bool parallel = true;
  double min_boundary_gap = 0.0;  // keep sample points away from kinks
};

// Deterministic mixture sampler: around the minimizer, around each
// region-boundary sphere, and uniform in a container ball.
std::vector<Vec> sample_points(const FunctionInstance& f, int n, std::uint64_t seed,
                               double min_boundary_gap = 0.0);
std::vector<std::pair<Vec, Vec>> sample_pairs(const FunctionInstance& f, int n,
                                              std::uint64_t seed);

// Each checker reports the worst scaled slack violation over the points;
// passed iff it stays within tol.
CheckReport check_qc(const FunctionInstance& f, double tau, const std::vector<Vec>& pts,
                     double tol = 1e-9, bool parallel = true);
CheckReport check_qg(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol = 1e-9, bool parallel = true);
CheckReport check_rsi(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                      double tol = 1e-9, bool parallel = true);
CheckReport check_eb(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol = 1e-9, bool parallel = true);
CheckReport check_pl(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol = 1e-9, bool parallel = true);
CheckReport check_sqc(const FunctionInstance& f, double tau, double mu,
                      const std::vector<Vec>& pts, double tol = 1e-9, bool parallel = true);
CheckReport check_smooth(const FunctionInstance& f, double L,
                         const std::vector<std::pair<Vec, Vec>>& pairs, double tol = 1e-6,
                         bool parallel = true);
CheckReport check_grad_fd(const FunctionInstance& f, double step_scale,
                          const std::vector<Vec>& pts, double tol = 1e-4,
                          bool parallel = true);

// Applicable checks chosen from the instance certificate tags.
std::vector<CheckReport> run_standard_checks(const FunctionInstance& f, const CheckOptions& opt);

// Sampled suprema of ||grad F_i - grad G|| inside and outside the
// identification region of instance i.
struct GradGapStats {
  double inside_sup = 0.0;
  double outside_sup = 0.0;
  int inside_samples = 0;
  int outside_samples = 0;
};
GradGapStats gradient_gap_stats(const HardFamily& fam, int i, int samples, std::uint64_t seed,
                                bool parallel = true);

}  // namespace optlab
