#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optlab/counterexamples.hpp"
#include "optlab/vec.hpp"

using namespace optlab;
using vec::Vec;

TEST_CASE("spiral function on the disk: basic shape") {
  auto f = counterexample_eb_not_rsi();
  CHECK(f.dim == 2);
  CHECK(f.f_star == 0.0);
  CHECK(f.value({0.0, 0.0}) == 0.0);
  CHECK(vec::norm(f.gradient({0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(f.value({1.2, 0.0}), std::domain_error);
  CHECK_THROWS_AS(f.gradient({0.9, 0.9}), std::domain_error);
}

TEST_CASE("spiral function: radial derivative vanishes on the critical curve") {
  auto f = counterexample_eb_not_rsi();
  double theta = 1.0 - 5.0 * M_PI / 4.0;
  Vec x = {std::cos(theta), std::sin(theta)};  // r = 1
  Vec g = f.gradient(x);
  // secant term <g, x - x_p> with x_p = 0 is the radial derivative
  CHECK(std::abs(vec::dot(g, x)) <= 1e-12);
  // yet the point is suboptimal and the gradient is bounded away from 0
  CHECK(f.value(x) > 0.5);
  CHECK(vec::norm(g) > 1.0);
}

TEST_CASE("spiral function: gradient matches finite differences inside the disk") {
  auto f = counterexample_eb_not_rsi();
  for (double r : {0.2, 0.5, 0.8}) {
    for (int k = 0; k < 8; ++k) {
      double th = 0.3 + 0.7 * k;
      Vec x = {r * std::cos(th), r * std::sin(th)};
      Vec g = f.gradient(x);
      double h = 1e-7;
      Vec fd = {(f.value({x[0] + h, x[1]}) - f.value({x[0] - h, x[1]})) / (2 * h),
                (f.value({x[0], x[1] + h}) - f.value({x[0], x[1] - h})) / (2 * h)};
      CHECK(vec::dist(fd, g) <= 1e-5 * std::max(1.0, vec::norm(g)));
    }
  }
}

TEST_CASE("piecewise quadratic: values and slopes at the reference points") {
  auto f = counterexample_rsi_not_starsc();
  CHECK(f.dim == 1);
  CHECK(f.value({0.0}) == 0.0);
  CHECK(f.value({0.5}) == doctest::Approx(0.375));
  CHECK(f.value({1.5}) == doctest::Approx(21.0 / 8.0));
  CHECK(f.gradient({1.5})[0] == doctest::Approx(1.5));
  // star-convexity-style upper bound fails: f(x) - f* > f'(x) x
  CHECK(f.value({1.5}) > f.gradient({1.5})[0] * 1.5);
  // the secant inequality with modulus 1 holds with equality there
  CHECK(f.gradient({1.5})[0] * 1.5 == doctest::Approx(1.5 * 1.5));
}

TEST_CASE("piecewise quadratic: 1-RSI on a dense grid") {
  auto f = counterexample_rsi_not_starsc();
  CHECK(f.certificate.mu == doctest::Approx(1.0));
  CHECK(f.certificate.L == doctest::Approx(3.0));
  for (int i = -400; i <= 400; ++i) {
    double x = 0.01 * i;
    double g = f.gradient({x})[0];
    CHECK(g * x >= x * x - 1e-12);
    // smoothness from the certificate
    double g2 = f.gradient({x + 1e-4})[0];
    CHECK(std::abs(g2 - g) <= 3.0 * 1e-4 + 1e-12);
  }
}

TEST_CASE("piecewise quadratic is even and continuous at its seams") {
  auto f = counterexample_rsi_not_starsc();
  for (double x : {0.3, 1.0, 1.2, 1.5, 2.7}) {
    CHECK(f.value({x}) == doctest::Approx(f.value({-x})));
    CHECK(f.gradient({x})[0] == doctest::Approx(-f.gradient({-x})[0]));
  }
  for (double s : {1.0, 1.5}) {
    CHECK(f.value({s - 1e-9}) == doctest::Approx(f.value({s + 1e-9})).epsilon(1e-6));
    CHECK(f.gradient({s - 1e-9})[0] ==
          doctest::Approx(f.gradient({s + 1e-9})[0]).epsilon(1e-5));
  }
}
