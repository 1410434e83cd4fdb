#include "fdcr/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace fdcr {

TrafficModel::TrafficModel(double lambda_off_, double beta_)
    : lambda_off(lambda_off_), beta(beta_) {
  if (!(lambda_off > 0.0))
    throw std::invalid_argument("TrafficModel: lambda_off must be positive");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("TrafficModel: beta must be in (0, 1)");
}

double f_tau(const TrafficModel& model, double t) {
  if (t < 0.0) throw std::domain_error("f_tau: negative time");
  return -std::expm1(-model.lambda_off * t);
}

double on_rate(const TrafficModel& model) {
  return model.lambda_off * (1.0 - model.beta) / model.beta;
}

}  // namespace fdcr
