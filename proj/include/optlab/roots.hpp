#pragma once

namespace optlab {

// Positive root of 1 - tau/2 - tau*r - (1 - tau/2)*r^2, in [sqrt(2)-1, 1].
double quasar_root_a(double tau);

// (kappa - 1) / (kappa + 1).
double rsi_root_a(double kappa);

// Positive root of
//   Q(r) = (tau/2 - 1) r^2 + ((1 - tau) - D/(4 Delta)) r + (1 - tau) D/(4 Delta) + tau/2
// located in [1 - tau, 1].
double qc_root_a(double tau, double D, double Delta);

}  // namespace optlab
