#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdcr/rng.hpp"
#include "fdcr/traffic.hpp"

using namespace fdcr;

TEST_CASE("TrafficModel validates its fields") {
  CHECK_THROWS_AS(TrafficModel(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(TrafficModel(0.01, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TrafficModel(0.01, 1.0), std::invalid_argument);
}

TEST_CASE("residual OFF-time CDF") {
  const TrafficModel m(0.01, 0.5);
  CHECK(f_tau(m, 0.0) == 0.0);
  // One mean OFF period: 1 - 1/e, frozen from direct arithmetic.
  CHECK(f_tau(m, 100.0) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
  CHECK(f_tau(m, 1e9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)f_tau(m, -1.0), std::domain_error);
}

TEST_CASE("residual OFF-time CDF is a proper increasing CDF") {
  const TrafficModel m(0.37, 0.2);
  double prev = -1.0;
  for (double t = 0.0; t < 30.0; t += 0.25) {
    const double v = f_tau(m, t);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("empirical CDF of exponential draws matches f_tau") {
  const TrafficModel m(0.01, 0.5);
  Xoshiro256pp rng(1234);
  const int n = 1000000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double y = -std::log(rng.uniform_open01()) / m.lambda_off;
    if (y <= 100.0) ++below;
  }
  const double p = f_tau(m, 100.0);
  const double se = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(static_cast<double>(below) / n - p) < 3.0 * se);
}

TEST_CASE("ON rate balances the load") {
  CHECK(on_rate(TrafficModel(0.01, 0.5)) == doctest::Approx(0.01));
  CHECK(on_rate(TrafficModel(0.01, 0.2)) == doctest::Approx(0.04));
  CHECK(on_rate(TrafficModel(2.0, 0.8)) == doctest::Approx(0.5));
}

TEST_CASE("long-run ON fraction of the alternating process converges to beta") {
  const TrafficModel m(0.01, 0.2);
  const double lambda_on = on_rate(m);
  Xoshiro256pp rng(99);
  double on_total = 0.0, off_total = 0.0;
  for (int cycle = 0; cycle < 1000000; ++cycle) {
    off_total += -std::log(rng.uniform_open01()) / m.lambda_off;
    on_total += -std::log(rng.uniform_open01()) / lambda_on;
  }
  CHECK(on_total / (on_total + off_total) ==
        doctest::Approx(0.2).epsilon(0.01));
}

TEST_CASE("residual OFF time observed mid-period is again exponential") {
  // Memorylessness: condition on the OFF period surviving past a fixed
  // inspection instant and look at what remains. Kolmogorov-Smirnov against
  // the unconditional OFF distribution at the 1% level.
  const TrafficModel m(0.5, 0.5);
  const double inspect_at = 1.7;
  Xoshiro256pp rng(4321);
  std::vector<double> residuals;
  const int wanted = 100000;
  while (static_cast<int>(residuals.size()) < wanted) {
    const double off = -std::log(rng.uniform_open01()) / m.lambda_off;
    if (off > inspect_at) residuals.push_back(off - inspect_at);
  }
  std::sort(residuals.begin(), residuals.end());
  double d_stat = 0.0;
  const double n = static_cast<double>(residuals.size());
  for (size_t i = 0; i < residuals.size(); ++i) {
    const double cdf = f_tau(m, residuals[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d_stat = std::max({d_stat, std::abs(cdf - lo), std::abs(cdf - hi)});
  }
  const double critical_1pct = 1.628 / std::sqrt(n);
  CHECK(d_stat < critical_1pct);
}
