#include "optlab/counterexamples.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab {

FunctionInstance counterexample_eb_not_rsi() {
  FunctionInstance f;
  f.dim = 2;
  f.f_star = 0.0;
  f.certificate = {0.0, 0.0, 1.0, {"EB"}};
  f.minimizer_set = MinimizerSet::point({0.0, 0.0});
  f.name = "eb-not-rsi";

  auto check_domain = [](double r) {
    if (r > 1.0 + 1e-12)
      throw std::domain_error("eb-not-rsi: defined on the closed unit disk only");
  };

  f.value = [check_domain](const Vec& x) {
    double r = std::hypot(x.at(0), x.at(1));
    check_domain(r);
    double theta = std::atan2(x[1], x[0]);
    double h = std::sqrt(2.0) * r + r * std::sin(r - theta) + 1.0;
    return h * h - 1.0;
  };
  f.gradient = [check_domain](const Vec& x) {
    double r = std::hypot(x.at(0), x.at(1));
    check_domain(r);
    if (r < 1e-300) return Vec{0.0, 0.0};
    double theta = std::atan2(x[1], x[0]);
    double s = std::sin(r - theta), c = std::cos(r - theta);
    double h = std::sqrt(2.0) * r + r * s + 1.0;
    double gr = 2.0 * h * (std::sqrt(2.0) + s + r * c);
    double gt = -2.0 * h * r * c;
    double ct = std::cos(theta), st = std::sin(theta);
    return Vec{ct * gr - st / r * gt, st * gr + ct / r * gt};
  };
  return f;
}

FunctionInstance counterexample_rsi_not_starsc() {
  FunctionInstance f;
  f.dim = 1;
  f.f_star = 0.0;
  f.certificate = {3.0, 1.0, 1.0, {"RSI", "Smooth"}};
  f.minimizer_set = MinimizerSet::point({0.0});
  f.boundaries = {{{0.0}, 1.0}, {{0.0}, 1.5}};
  f.name = "rsi-not-starsc";

  f.value = [](const Vec& xv) {
    double x = xv.at(0), ax = std::abs(x);
    if (ax < 1.0) return 1.5 * x * x;
    if (ax < 1.5) return -1.5 * x * x + 6.0 * ax - 3.0;
    return 1.5 + 0.5 * x * x;
  };
  f.gradient = [](const Vec& xv) {
    double x = xv.at(0), ax = std::abs(x);
    double sgn = x >= 0.0 ? 1.0 : -1.0;
    if (ax < 1.0) return Vec{3.0 * x};
    if (ax < 1.5) return Vec{-3.0 * x + 6.0 * sgn};
    return Vec{x};
  };
  return f;
}

}  // namespace optlab
