#pragma once

#include <cstdint>

#include "fdcr/outage.hpp"
#include "fdcr/throughput.hpp"

namespace fdcr {

enum class Hypothesis { kIdle, kBusy };  // H0, H1

// How the frame simulator obtains sensing verdicts: Bernoulli draws from
// the closed-form probabilities, or full sample-level energy detection.
enum class DetectorDraw { kAnalytic, kSampled };

// ON-period model for the simulated PU. Only the exponential model matches
// the analytic assumptions; the others exist for sensitivity studies.
enum class OnModel { kExponential, kDeterministic, kErlang2 };

struct SampleTrialResult {
  double decision_busy_fraction = 0;
  long long trials = 0;
  double std_err = 0;  // sqrt(p(1-p)/trials) at the estimate
};

struct MetricMoments {
  double mean = 0;
  double variance = 0;
  double se_mean = 0;      // standard error of the sample mean
  double se_variance = 0;  // Gaussian approximation, s^2 * sqrt(2/(n-1))
  long long trials = 0;
};

struct SystemTrialResult {
  long long frames = 0;
  long long attempts = 0;    // frames with an idle initial verdict
  long long collisions = 0;  // attempts that overlapped PU activity
  double collision_rate = 0; // collisions / attempts
  double throughput_estimate = 0;  // bits/s/Hz averaged over attempts
  double overlap_time_total = 0;   // seconds of SU/PU overlap
};

// Sample-level energy detection: per trial, N = round(t_s * f_s) samples of
// CSCG noise plus QPSK own-signal leakage (FD only) plus a QPSK PU signal
// (busy only); declare busy when the average energy exceeds cfg.gamma.
SampleTrialResult simulate_detector(const SensingConfig& cfg, double t_s,
                                    Hypothesis hypothesis, Duplex duplex,
                                    long long trials, uint64_t seed);

// Sample mean/variance of the raw energy metric, for validating the
// Gaussian moment approximations.
MetricMoments simulate_metric_moments(const SensingConfig& cfg, double t_s,
                                      Hypothesis hypothesis, Duplex duplex,
                                      long long trials, uint64_t seed);

// Frame-level system simulation. The PU ON/OFF process runs continuously
// across frames; each frame senses for t_s0, then (on an idle verdict)
// transmits per the schedule. TS aborts at the end of the first busy
// window. A collision is any overlap of SU transmission with PU ON time.
SystemTrialResult simulate_system(const TrafficModel& model,
                                  const FrameSchedule& sched,
                                  const SensingConfig& sense,
                                  const LinkModel& link, long long frames,
                                  uint64_t seed,
                                  DetectorDraw detector = DetectorDraw::kAnalytic,
                                  OnModel on_model = OnModel::kExponential);

}  // namespace fdcr
