#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optlab/roots.hpp"

using namespace optlab;

namespace {

// independent bisection oracle for cross-checking closed forms
template <class F>
double bisect_root(F&& f, double lo, double hi) {
  double flo = f(lo);
  REQUIRE(flo * f(hi) <= 0.0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) * flo > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double quasar_poly(double tau, double r) {
  return 1.0 - tau / 2.0 - tau * r - (1.0 - tau / 2.0) * r * r;
}

}  // namespace

TEST_CASE("quasar root closed form at tau=1") {
  CHECK(quasar_root_a(1.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("quasar root satisfies its defining polynomial") {
  for (double tau : {0.05, 0.2, 0.3, 0.5, 0.75, 1.0}) {
    double a = quasar_root_a(tau);
    CHECK(std::abs(quasar_poly(tau, a)) <= 1e-12);
    CHECK(a >= std::sqrt(2.0) - 1.0 - 1e-12);
    CHECK(a <= 1.0 + 1e-12);
    CHECK(1.0 - a <= tau + 1e-12);
  }
}

TEST_CASE("quasar root tau=0.2 value") {
  CHECK(quasar_root_a(0.2) == doctest::Approx(0.895045).epsilon(1e-5));
}

TEST_CASE("quasar root agrees with bisection") {
  for (double tau : {0.1, 0.5, 0.9}) {
    double ref = bisect_root([&](double r) { return quasar_poly(tau, r); }, 0.0, 1.0);
    CHECK(quasar_root_a(tau) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("quasar root domain errors") {
  CHECK_THROWS_AS(quasar_root_a(0.0), std::domain_error);
  CHECK_THROWS_AS(quasar_root_a(1.5), std::domain_error);
  CHECK_THROWS_AS(quasar_root_a(-0.1), std::domain_error);
}

TEST_CASE("rsi root values") {
  CHECK(rsi_root_a(1.0) == 0.0);
  CHECK(rsi_root_a(3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rsi_root_a(202.0) == doctest::Approx(201.0 / 203.0).epsilon(1e-15));
  CHECK(rsi_root_a(202.0) == doctest::Approx(0.990147).epsilon(1e-5));
  CHECK_THROWS_AS(rsi_root_a(0.5), std::domain_error);
}

TEST_CASE("qc root lies in [1-tau, 1] with zero residual") {
  for (double tau : {0.1, 0.3, 0.5, 1.0}) {
    for (double q : {5.0, 8.0, 40.0}) {  // q = D/(4 Delta)
      double D = 16.0, Delta = D / (4.0 * q);
      double a = qc_root_a(tau, D, Delta);
      CHECK(a >= 1.0 - tau - 1e-12);
      CHECK(a <= 1.0 + 1e-12);
      auto Q = [&](double r) {
        return (tau / 2.0 - 1.0) * r * r + ((1.0 - tau) - q) * r + (1.0 - tau) * q + tau / 2.0;
      };
      CHECK(std::abs(Q(a)) <= 1e-10);
      CHECK(Q(1.0 - tau) >= -1e-12);
      CHECK(Q(1.0) <= 1e-12);
      CHECK(Q(1.0) == doctest::Approx(-tau * q).epsilon(1e-12));
    }
  }
}

TEST_CASE("qc root tau=1 against the quadratic formula") {
  double D = 16.0, Delta = 0.5;
  double q = D / (4.0 * Delta);
  // -r^2/2 - q r + 1/2 = 0  =>  r = -q + sqrt(q^2 + 1)
  double ref = -q + std::sqrt(q * q + 1.0);
  CHECK(qc_root_a(1.0, D, Delta) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("qc root agrees with independent bisection") {
  double tau = 0.5, D = 16.0, Delta = 1.0 - 1e-9;
  double q = D / (4.0 * Delta);
  double ref = bisect_root(
      [&](double r) {
        return (tau / 2.0 - 1.0) * r * r + ((1.0 - tau) - q) * r + (1.0 - tau) * q + tau / 2.0;
      },
      1.0 - tau, 1.0);
  CHECK(qc_root_a(tau, D, Delta) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("qc root domain errors") {
  CHECK_THROWS_AS(qc_root_a(0.5, 16.0, 2.0), std::domain_error);   // Delta >= D/16
  CHECK_THROWS_AS(qc_root_a(0.5, -1.0, 0.01), std::domain_error);  // bad D
  CHECK_THROWS_AS(qc_root_a(1.2, 16.0, 0.5), std::domain_error);   // bad tau
}
