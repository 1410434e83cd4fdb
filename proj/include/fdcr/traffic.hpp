#pragma once

namespace fdcr {

// Alternating ON/OFF primary-user activity. OFF periods are exponential
// with rate lambda_off; beta is the stationary fraction of time ON.
struct TrafficModel {
  double lambda_off;  // 1/seconds
  double beta;        // in (0, 1)

  TrafficModel(double lambda_off, double beta);
};

// CDF of the residual OFF time observed at an arbitrary instant inside an
// OFF period (memoryless, so identical to the OFF distribution itself):
// 1 - exp(-lambda_off * t). Throws std::domain_error for t < 0.
double f_tau(const TrafficModel& model, double t);

// ON-period rate that makes the stationary ON fraction equal beta:
// lambda_on = lambda_off * (1 - beta) / beta.
double on_rate(const TrafficModel& model);

}  // namespace fdcr
