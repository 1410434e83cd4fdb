#include "fdcr/outage.hpp"

#include <cmath>
#include <stdexcept>

namespace fdcr {

FrameSchedule FrameSchedule::transmit_only(double t_s0, double t) {
  FrameSchedule s;
  s.mode = SuMode::kTransmitOnly;
  s.t_s0 = t_s0;
  s.t = t;
  s.validate();
  return s;
}

FrameSchedule FrameSchedule::transmit_sense(double t_s0, double t, long long m,
                                            double t_si, BSumMode b_sum) {
  FrameSchedule s;
  s.mode = SuMode::kTransmitSense;
  s.t_s0 = t_s0;
  s.t = t;
  s.m = m;
  s.t_si = t_si;
  s.b_sum = b_sum;
  s.validate();
  return s;
}

FrameSchedule FrameSchedule::transmit_sense_equal_windows(double t_s0, double t,
                                                          long long m,
                                                          BSumMode b_sum) {
  const double windows =
      b_sum == BSumMode::kLiteral ? static_cast<double>(m + 1)
                                  : static_cast<double>(m);
  if (!(windows > 0)) {
    throw std::invalid_argument(
        "FrameSchedule: partition layout needs at least one window");
  }
  return transmit_sense(t_s0, t, m, t / windows, b_sum);
}

FrameSchedule FrameSchedule::transmit_receive(double t_s0, double t,
                                              double t_r) {
  FrameSchedule s;
  s.mode = SuMode::kTransmitReceive;
  s.t_s0 = t_s0;
  s.t = t;
  s.t_r = t_r;
  s.validate();
  return s;
}

FrameSchedule FrameSchedule::with_durations(double new_t_s0,
                                            double new_t) const {
  FrameSchedule s = *this;
  s.t_s0 = new_t_s0;
  s.t = new_t;
  if (mode == SuMode::kTransmitReceive && t_r == t) s.t_r = new_t;
  s.validate();
  return s;
}

void FrameSchedule::validate() const {
  if (!(t_s0 > 0.0))
    throw std::invalid_argument("FrameSchedule: t_s0 must be positive");
  if (!(t > 0.0))
    throw std::invalid_argument("FrameSchedule: t must be positive");
  switch (mode) {
    case SuMode::kTransmitOnly:
      break;
    case SuMode::kTransmitSense:
      if (m < 0)
        throw std::invalid_argument("FrameSchedule: m must be nonnegative");
      if (!(t_si > 0.0))
        throw std::invalid_argument("FrameSchedule: t_si must be positive");
      if (b_sum == BSumMode::kPartition && m < 1)
        throw std::invalid_argument(
            "FrameSchedule: partition layout needs m >= 1");
      break;
    case SuMode::kTransmitReceive:
      if (t_r < 0.0)
        throw std::invalid_argument("FrameSchedule: t_r must be nonnegative");
      break;
  }
}

double collision_to_perfect(const TrafficModel& model,
                            const FrameSchedule& sched) {
  if (sched.mode == SuMode::kTransmitSense) {
    throw std::invalid_argument(
        "collision_to_perfect: schedule is not TO/TR-shaped");
  }
  return f_tau(model, sched.t);
}

namespace {

constexpr double kMinAttemptProb = 1e-300;

}  // namespace

CollisionBreakdown collision_to_imperfect_probs(const TrafficModel& model,
                                                double t, double pf0,
                                                double pd0) {
  const double a = model.beta * (1.0 - pd0);
  const double idle_clear = (1.0 - model.beta) * (1.0 - pf0);
  const double w = a + idle_clear;
  if (w <= kMinAttemptProb) {
    throw std::domain_error(
        "collision: the initial verdict is never idle, conditional "
        "probability undefined");
  }
  const double b = idle_clear * f_tau(model, t);
  return CollisionBreakdown{(a + b) / w, a, b, w};
}

CollisionBreakdown collision_to_imperfect(const TrafficModel& model,
                                          const FrameSchedule& sched,
                                          const SensingConfig& sense) {
  return collision_to_imperfect_probs(model, sched.t,
                                      pf_hd(sense, sched.t_s0),
                                      pd_hd(sense, sched.t_s0));
}

double collision_ts_perfect() { return 0.0; }

CollisionBreakdown collision_ts_imperfect_probs(const TrafficModel& model,
                                                const FrameSchedule& sched,
                                                double pf0, double pd0,
                                                double pf_window) {
  const double a = model.beta * (1.0 - pd0);
  const double idle_clear = (1.0 - model.beta) * (1.0 - pf0);
  const double w = a + idle_clear;
  if (w <= kMinAttemptProb) {
    throw std::domain_error(
        "collision: the initial verdict is never idle, conditional "
        "probability undefined");
  }
  const long long terms =
      sched.b_sum == BSumMode::kLiteral ? sched.m + 1 : sched.m;
  // PU returns in window i after i-1 alarm-free windows; the per-window
  // return masses telescope over the exponential tail.
  const double step = std::exp(-model.lambda_off * sched.t_si);
  const double mass0 = -std::expm1(-model.lambda_off * sched.t_si);
  double survive = 1.0;   // no false alarm in the first i-1 windows
  double tail = 1.0;      // PU still away at the (i-1)-th boundary
  double sum = 0.0;
  for (long long i = 1; i <= terms; ++i) {
    sum += survive * tail * mass0;
    survive *= 1.0 - pf_window;
    tail *= step;
    if (survive == 0.0 || tail == 0.0) break;
  }
  const double b = idle_clear * sum;
  return CollisionBreakdown{(a + b) / w, a, b, w};
}

CollisionBreakdown collision_ts_imperfect(const TrafficModel& model,
                                          const FrameSchedule& sched,
                                          const SensingConfig& sense) {
  if (sched.mode != SuMode::kTransmitSense) {
    throw std::invalid_argument("collision_ts_imperfect: schedule is not TS");
  }
  return collision_ts_imperfect_probs(model, sched, pf_hd(sense, sched.t_s0),
                                      pd_hd(sense, sched.t_s0),
                                      pf_fd(sense, sched.t_si));
}

CollisionBreakdown collision(const TrafficModel& model,
                             const FrameSchedule& sched,
                             const SensingConfig& sense,
                             SensingQuality quality) {
  if (quality == SensingQuality::kPerfect) {
    // A perfect initial verdict means attempts happen exactly when the PU
    // is away, so w = 1 - beta.
    const double w = 1.0 - model.beta;
    if (sched.mode == SuMode::kTransmitSense) {
      return CollisionBreakdown{collision_ts_perfect(), 0.0, 0.0, w};
    }
    const double total = collision_to_perfect(model, sched);
    return CollisionBreakdown{total, 0.0, w * total, w};
  }
  if (sched.mode == SuMode::kTransmitSense) {
    return collision_ts_imperfect(model, sched, sense);
  }
  return collision_to_imperfect(model, sched, sense);
}

}  // namespace fdcr
