#include "fdcr/qfunc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fdcr {

double gaussian_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double q_function(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("q_function: non-finite argument");
  }
  const double raw = 0.5 * std::erfc(x / std::numbers::sqrt2);
  // Detector tails feed chained products downstream; keep the value inside
  // the open interval so 1-p and p stay nonzero.
  const double lo = std::numeric_limits<double>::denorm_min();
  const double hi = std::nextafter(1.0, 0.0);
  if (raw < lo) return lo;
  if (raw > hi) return hi;
  return raw;
}

namespace {

// Rational approximation for the inverse standard normal CDF
// (P. Acklam's coefficients), refined below by Newton steps.
double norm_inv_approx(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double inverse_q(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_q: argument must lie in (0, 1)");
  }
  // Q(x) = p  <=>  x = -Phi^{-1}(p)
  double x = -norm_inv_approx(p);
  for (int i = 0; i < 2; ++i) {
    const double pdf = gaussian_pdf(x);
    if (pdf <= 0.0) break;
    x += (q_function(x) - p) / pdf;
  }
  return x;
}

}  // namespace fdcr
