#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optlab/instance.hpp"

namespace optlab {

enum class FamilyKind { QCQG, RSI, QC };

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

// Dimension of the noisy subspace required by each construction.
int qcqg_d0(double tau);           // ceil(log_{5/4}(4/tau^2))
int rsi_d0(double kappa);          // ceil(log_{5/4}(4 kappa^2))
int qc_d0(double tau);             // ceil(log_{16/15}(4/tau^2))
int packing_target(FamilyKind k, int d0);  // ceil(base^d0 / 2)

// Single hard instances over R^{d0}, minimum value 0 at z.
FunctionInstance make_qcqg_instance(double mu, double tau, double Delta, Vec z, int d0);
FunctionInstance make_rsi_instance(double L, double mu, double Delta, Vec z, int d0);
FunctionInstance make_qc_instance(double L, double tau, double D, double Delta, Vec z, int d0);

struct HardFamilyParams {
  FamilyKind kind = FamilyKind::QCQG;
  double L = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  double tau = 1.0;
  double Delta = 1.0;
  double D = 0.0;  // QC only
  int d0 = 0;
  int d = 0;
  int m = 0;
  double a = 0.0;
  std::vector<Vec> centers;
};

// Reference function G sharing the far-field of the family.
FunctionInstance make_reference(FamilyKind kind, const HardFamilyParams& p);

// Lift f from R^{d0} to R^d; extra coordinates are flat.
FunctionInstance embed(const FunctionInstance& f, int d);

struct PackingResult {
  std::vector<Vec> centers;
  int target = 0;
  long proposals_used = 0;
  bool reached = false;
};

PackingResult pack_centers(int d0, double container_radius, double exclusion_radius,
                           int m_target, std::uint64_t seed, long proposal_cap = 1000000);

struct HardFamily {
  HardFamilyParams params;
  std::vector<FunctionInstance> instances;  // dim d
  FunctionInstance reference;               // dim d

  // Good-identification region B(z_i, region_radius) in the noisy subspace.
  double region_radius() const;
  // Per-query gradient-gap bounds used by the divergence accounting.
  double inside_sup() const;
  double outside_sup() const;
  // Exact value of the gap on the far plateau (attained, <= outside_sup).
  double outside_plateau() const;
  // Minimum suboptimality of F_i outside the identification region.
  double gap_floor() const;
};

struct HardFamilyOptions {
  FamilyKind kind = FamilyKind::QCQG;
  double mu = 1.0;
  double L = 0.0;    // RSI/QC; QCQG derives L = 202 mu
  double tau = 1.0;  // QCQG/QC
  double Delta = 1.0;
  double D = 0.0;  // QC
  double sigma = 1.0;
  int d0 = 0;       // 0 = construction value
  int d = 0;        // 0 = d0
  int m_target = 0; // 0 = packing_target
  std::uint64_t seed = 1;
  bool require_target = true;
};

HardFamily make_hard_family(const HardFamilyOptions& opt);

}  // namespace optlab
