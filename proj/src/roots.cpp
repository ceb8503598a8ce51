#include "optlab/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab {

double quasar_root_a(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("quasar_root_a: tau must be in (0,1]");
  return (-tau + std::sqrt(2.0 * tau * tau - 4.0 * tau + 4.0)) / (2.0 - tau);
}

double rsi_root_a(double kappa) {
  if (!(kappa >= 1.0)) throw std::domain_error("rsi_root_a: kappa must be >= 1");
  return (kappa - 1.0) / (kappa + 1.0);
}

double qc_root_a(double tau, double D, double Delta) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("qc_root_a: tau must be in (0,1]");
  if (!(D > 0.0)) throw std::domain_error("qc_root_a: D must be positive");
  if (!(Delta > 0.0 && Delta < D / 16.0))
    throw std::domain_error("qc_root_a: Delta must lie in (0, D/16)");

  const double q = D / (4.0 * Delta);
  auto Q = [&](double r) {
    return (tau / 2.0 - 1.0) * r * r + ((1.0 - tau) - q) * r + (1.0 - tau) * q + tau / 2.0;
  };

  double lo = 1.0 - tau, hi = 1.0;
  double qlo = Q(lo), qhi = Q(hi);
  if (qlo < 0.0 || qhi > 0.0)
    throw std::runtime_error("qc_root_a: no sign change on [1-tau, 1]");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double qm = Q(mid);
    if (qm >= 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace optlab
