#pragma once

#include <cstdint>

#include "fdcr/dettheory.hpp"
#include "fdcr/traffic.hpp"

namespace fdcr {

// Secondary-user operating modes. All three start with a quiet sensing
// period t_s0; TS keeps sensing in short windows while transmitting, TR
// receives from the peer while transmitting.
enum class SuMode { kTransmitOnly, kTransmitSense, kTransmitReceive };

// How the in-transmission window sum is laid out for the TS mode:
//  kLiteral   sums over m+1 window boundaries, so equal windows of
//             t/(m+1) tile the transmission exactly;
//  kPartition sums over m boundaries with equal windows of t/m.
enum class BSumMode { kLiteral, kPartition };

enum class SensingQuality { kPerfect, kImperfect };

struct FrameSchedule {
  SuMode mode;
  double t_s0 = 0;   // initial quiet sensing, seconds
  double t = 0;      // transmission duration, seconds
  double t_r = 0;    // reception duration (TR), seconds; 0 = no reverse traffic
  long long m = 0;   // in-transmission sensing windows (TS)
  double t_si = 0;   // per-window sensing duration (TS), seconds
  BSumMode b_sum = BSumMode::kLiteral;

  static FrameSchedule transmit_only(double t_s0, double t);
  static FrameSchedule transmit_sense(double t_s0, double t, long long m,
                                      double t_si,
                                      BSumMode b_sum = BSumMode::kLiteral);
  // Equal windows: t_si = t/(m+1) for the literal layout, t/m for partition.
  static FrameSchedule transmit_sense_equal_windows(
      double t_s0, double t, long long m, BSumMode b_sum = BSumMode::kLiteral);
  static FrameSchedule transmit_receive(double t_s0, double t, double t_r);

  FrameSchedule with_durations(double new_t_s0, double new_t) const;

  void validate() const;
};

// One collision probability with its constituent masses:
//   total = (term_a + term_b) / w
// term_a:  busy channel missed by the initial sensing
// term_b:  idle verdict, then the PU returns during the transmission
// w:       probability the initial verdict is "idle" (transmission attempt)
struct CollisionBreakdown {
  double total;
  double term_a;
  double term_b;
  double w;
};

// Transmit-only (and transmit-receive) collision under perfect sensing:
// just the chance the PU comes back within the transmission.
double collision_to_perfect(const TrafficModel& model,
                            const FrameSchedule& sched);

CollisionBreakdown collision_to_imperfect(const TrafficModel& model,
                                          const FrameSchedule& sched,
                                          const SensingConfig& sense);

// Detector-probability form used by the above; also handy for tests and
// for injecting idealized detectors.
CollisionBreakdown collision_to_imperfect_probs(const TrafficModel& model,
                                                double t, double pf0,
                                                double pd0);

// Perfect continuous sensing catches the PU return within a window; the
// idealization counts that as no collision.
double collision_ts_perfect();

CollisionBreakdown collision_ts_imperfect(const TrafficModel& model,
                                          const FrameSchedule& sched,
                                          const SensingConfig& sense);

CollisionBreakdown collision_ts_imperfect_probs(const TrafficModel& model,
                                                const FrameSchedule& sched,
                                                double pf0, double pd0,
                                                double pf_window);

// Dispatch by mode and sensing quality. TR uses the TO formulas.
CollisionBreakdown collision(const TrafficModel& model,
                             const FrameSchedule& sched,
                             const SensingConfig& sense,
                             SensingQuality quality);

}  // namespace fdcr
