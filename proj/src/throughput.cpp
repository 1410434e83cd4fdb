#include "fdcr/throughput.hpp"

#include <cmath>
#include <stdexcept>

namespace fdcr {

LinkModel::LinkModel(double p_i_, double p_j_, double d_ij_, double d_ji_,
                     double c_, double eta_, double sigma_i2_, double sigma_j2_,
                     double chi_i_, double chi_j_)
    : p_i(p_i_),
      p_j(p_j_),
      d_ij(d_ij_),
      d_ji(d_ji_),
      c(c_),
      eta(eta_),
      sigma_i2(sigma_i2_),
      sigma_j2(sigma_j2_),
      chi_i(chi_i_),
      chi_j(chi_j_) {
  if (!(p_i > 0.0 && p_j > 0.0))
    throw std::invalid_argument("LinkModel: powers must be positive");
  if (!(d_ij > 0.0 && d_ji > 0.0))
    throw std::invalid_argument("LinkModel: distances must be positive");
  if (!(c > 0.0))
    throw std::invalid_argument("LinkModel: path-loss constant must be positive");
  if (!(sigma_i2 > 0.0 && sigma_j2 > 0.0))
    throw std::invalid_argument("LinkModel: noise variances must be positive");
  if (!(chi_i >= 0.0 && chi_i <= 1.0 && chi_j >= 0.0 && chi_j <= 1.0))
    throw std::invalid_argument("LinkModel: chi must be in [0, 1]");
}

double channel_gain(const LinkModel& link, Direction dir) {
  const double d = dir == Direction::kForward ? link.d_ij : link.d_ji;
  return link.c * std::pow(d, -link.eta);
}

double snr_to(const LinkModel& link) {
  const double h = channel_gain(link, Direction::kForward);
  return link.p_i * h * h / link.sigma_j2;
}

double snr_tr(const LinkModel& link, TrNode at) {
  if (at == TrNode::kNodeJ) {
    const double h = channel_gain(link, Direction::kForward);
    // |h_jj| = 1: the self-channel sees the raw transmit power.
    return link.p_i * h * h /
           (link.sigma_j2 + link.chi_j * link.chi_j * link.p_j);
  }
  const double h = channel_gain(link, Direction::kReverse);
  return link.p_j * h * h /
         (link.sigma_i2 + link.chi_i * link.chi_i * link.p_i);
}

ThroughputReport rate_to(const LinkModel& link, const FrameSchedule& sched,
                         double collision_prob) {
  const double duty = sched.t / (sched.t + sched.t_s0);
  const double v =
      (1.0 - collision_prob) * duty * std::log2(1.0 + snr_to(link));
  return ThroughputReport{v, v, 0.0, collision_prob};
}

ThroughputReport rate_ts(const LinkModel& link, const FrameSchedule& sched,
                         const CollisionBreakdown& collision) {
  // Same spectral efficiency as one-way operation; only the collision
  // probability differs.
  return rate_to(link, sched, collision.total);
}

ThroughputReport rate_tr(const LinkModel& link, const FrameSchedule& sched,
                         double collision_prob, TrNormalization norm) {
  const double clear = 1.0 - collision_prob;
  const double fwd = clear * sched.t / (sched.t + sched.t_s0) *
                     std::log2(1.0 + snr_tr(link, TrNode::kNodeJ));
  double rev = 0.0;
  if (sched.t_r > 0.0) {
    const double r_duty = norm == TrNormalization::kLiteral
                              ? sched.t_r / (sched.t_r + sched.t_s0)
                              : sched.t_r / (sched.t + sched.t_s0);
    rev = clear * r_duty * std::log2(1.0 + snr_tr(link, TrNode::kNodeI));
  }
  return ThroughputReport{fwd + rev, fwd, rev, collision_prob};
}

}  // namespace fdcr
