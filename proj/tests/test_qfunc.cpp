#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "fdcr/qfunc.hpp"

using namespace fdcr;

namespace {

// Independent oracle: adaptive Simpson quadrature of the Gaussian density
// over the upper tail. Never touches erfc.
double simpson(double (*f)(double), double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive_simpson(double (*f)(double), double a, double b, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, right, tol / 2.0, depth - 1);
}

double density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

double oracle_q(double x) {
  if (x < 0.0) return 1.0 - oracle_q(-x);
  // Everything beyond x + w is relatively negligible.
  const double w = std::min(45.0, 8.0 + 30.0 / std::max(x, 0.5));
  const int panels = 16;
  // Rough panel estimates first; the adaptive pass then refines each panel
  // to a tolerance proportional to the whole integral, which keeps ~1e-15
  // relative accuracy without over-refining negligible far panels.
  double rough = 0.0;
  double panel_est[panels];
  for (int k = 0; k < panels; ++k) {
    const double a = x + w * k / panels;
    const double b = x + w * (k + 1) / panels;
    panel_est[k] = simpson(density, a, b);
    rough += panel_est[k];
  }
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = x + w * k / panels;
    const double b = x + w * (k + 1) / panels;
    // Tolerance well above the rounding-noise floor of the subdivision
    // test, or the recursion cannot terminate.
    const double tol = rough * 3e-14 / panels + 1e-320;
    total += adaptive_simpson(density, a, b, panel_est[k], tol, 30);
  }
  return total;
}

}  // namespace

TEST_CASE("q_function matches quadrature oracle to 1e-12 relative") {
  for (double x = -8.0; x <= 8.0 + 1e-9; x += 0.25) {
    const double expected = oracle_q(x);
    const double got = q_function(x);
    CHECK(std::abs(got - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("q_function spot values") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_function(8.0) < 1e-14);
  // 5% upper tail point of the standard Gaussian.
  const double x = 1.6448536269514722;
  CHECK(std::abs(oracle_q(x) - 0.05) < 1e-13);
  CHECK(std::abs(q_function(x) - 0.05) < 1e-9);
}

TEST_CASE("q_function symmetry and monotonicity") {
  // Strictly decreasing where doubles can resolve the difference; weakly
  // decreasing out in the saturated tails.
  double prev = 1.0;
  for (double x = -8.0; x <= 8.0 + 1e-9; x += 0.5) {
    const double q = q_function(x);
    CHECK(q + q_function(-x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q < prev);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    prev = q;
  }
  prev = 1.0;
  for (double x = -40.0; x <= 40.0 + 1e-9; x += 1.0) {
    const double q = q_function(x);
    CHECK(q <= prev);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    prev = q;
  }
}

TEST_CASE("q_function stays inside (0,1) for extreme finite arguments") {
  CHECK(q_function(1e6) > 0.0);
  CHECK(q_function(-1e6) < 1.0);
  CHECK_THROWS_AS((void)q_function(std::nan("")), std::domain_error);
  CHECK_THROWS_AS((void)q_function(INFINITY), std::domain_error);
}

TEST_CASE("inverse_q round trips") {
  CHECK(inverse_q(0.5) == 0.0);
  for (double p : {1e-12, 1e-9, 1e-6, 0.001, 0.025, 0.1, 0.5, 0.9, 0.999,
                   1.0 - 1e-9}) {
    const double x = inverse_q(p);
    CHECK(q_function(x) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)inverse_q(0.0), std::domain_error);
  CHECK_THROWS_AS((void)inverse_q(1.0), std::domain_error);
}
