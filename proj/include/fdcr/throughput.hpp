#pragma once

#include "fdcr/outage.hpp"

namespace fdcr {

enum class Direction { kForward, kReverse };  // i->j, j->i
enum class TrNode { kNodeI, kNodeJ };

// Point-to-point SU link with power-law path loss. The self-interference
// channel gain is fixed to 1 (transmitter and receiver share the node), so
// chi^2 * p is the residual self-interference power at the own receiver.
struct LinkModel {
  double p_i, p_j;            // transmit powers
  double d_ij, d_ji;          // distances, meters
  double c;                   // path-loss constant
  double eta;                 // path-loss exponent
  double sigma_i2, sigma_j2;  // receiver noise variances
  double chi_i, chi_j;        // per-node residual self-interference factors

  LinkModel(double p_i, double p_j, double d_ij, double d_ji, double c,
            double eta, double sigma_i2, double sigma_j2, double chi_i,
            double chi_j);
};

// Amplitude gain c * d^-eta for the requested direction.
double channel_gain(const LinkModel& link, Direction dir);

// Linear SNR at node j for a one-way transmission from i.
double snr_to(const LinkModel& link);

// Linear SNR at the given node while both ends transmit; the denominator
// picks up the residual self-interference chi^2 * p of the receiving node.
double snr_tr(const LinkModel& link, TrNode at);

// Reverse-direction duty factor for bidirectional operation:
//  kLiteral     t_r / (t_r + t_s0)
//  kSharedDuty  t_r / (t + t_s0)   (variant; documented, default off)
enum class TrNormalization { kLiteral, kSharedDuty };

struct ThroughputReport {
  double value;           // bits/s/Hz
  double forward;         // i->j component
  double reverse;         // j->i component (TR only, else 0)
  double collision_prob;  // probability used in the (1 - P) factor
};

ThroughputReport rate_to(const LinkModel& link, const FrameSchedule& sched,
                         double collision_prob);

ThroughputReport rate_ts(const LinkModel& link, const FrameSchedule& sched,
                         const CollisionBreakdown& collision);

ThroughputReport rate_tr(const LinkModel& link, const FrameSchedule& sched,
                         double collision_prob,
                         TrNormalization norm = TrNormalization::kLiteral);

}  // namespace fdcr
