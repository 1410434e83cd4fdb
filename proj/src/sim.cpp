#include "fdcr/sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdcr/rng.hpp"

namespace fdcr {

namespace {

constexpr long long kMaxTrials = 2'000'000'000;

struct ComplexSample {
  double re, im;
};

// One received sample: CSCG noise, QPSK own-signal leakage, QPSK PU signal.
// The draw pattern per sample (one Gaussian pair, one symbol word) does not
// depend on duplex or hypothesis, so runs with the same seed walk the same
// stream and differ only through the amplitude factors.
class SampleSource {
 public:
  SampleSource(const SensingConfig& cfg, Hypothesis hyp, Duplex duplex,
               Xoshiro256pp& rng)
      : rng_(rng),
        noise_amp_(std::sqrt(cfg.sigma_w2 / 2.0)),
        self_amp_(duplex == Duplex::kFull
                      ? cfg.chi * std::sqrt(cfg.alpha_s * cfg.sigma_w2)
                      : 0.0),
        pu_amp_(hyp == Hypothesis::kBusy
                    ? std::sqrt(cfg.alpha_l * cfg.sigma_w2)
                    : 0.0) {}

  ComplexSample next() {
    double re = noise_amp_ * normal_.draw(rng_);
    double im = noise_amp_ * normal_.draw(rng_);

    const uint64_t bits = rng_.next();
    const int ks = static_cast<int>(bits & 3u);
    const int kl = static_cast<int>((bits >> 2) & 3u);
    re += self_amp_ * kQpskRe[ks] + pu_amp_ * kQpskRe[kl];
    im += self_amp_ * kQpskIm[ks] + pu_amp_ * kQpskIm[kl];
    return ComplexSample{re, im};
  }

 private:
  static constexpr double kInvSqrt2 = 0.7071067811865476;
  static constexpr double kQpskRe[4] = {kInvSqrt2, -kInvSqrt2, -kInvSqrt2,
                                        kInvSqrt2};
  static constexpr double kQpskIm[4] = {kInvSqrt2, kInvSqrt2, -kInvSqrt2,
                                        -kInvSqrt2};

  Xoshiro256pp& rng_;
  ZigguratNormal normal_;
  double noise_amp_;
  double self_amp_;
  double pu_amp_;
};

double energy_metric(SampleSource& src, long long n) {
  double acc = 0.0;
  for (long long k = 0; k < n; ++k) {
    const ComplexSample s = src.next();
    acc += s.re * s.re + s.im * s.im;
  }
  return acc / static_cast<double>(n);
}

void check_trials(long long trials) {
  if (trials < 1 || trials > kMaxTrials) {
    throw std::invalid_argument("simulate: trials out of range");
  }
}

}  // namespace

SampleTrialResult simulate_detector(const SensingConfig& cfg, double t_s,
                                    Hypothesis hypothesis, Duplex duplex,
                                    long long trials, uint64_t seed) {
  check_trials(trials);
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  Xoshiro256pp rng(seed);
  SampleSource src(cfg, hypothesis, duplex, rng);
  long long busy = 0;
  for (long long trial = 0; trial < trials; ++trial) {
    if (energy_metric(src, n.n) > cfg.gamma) ++busy;
  }
  const double p = static_cast<double>(busy) / static_cast<double>(trials);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return SampleTrialResult{p, trials, se};
}

MetricMoments simulate_metric_moments(const SensingConfig& cfg, double t_s,
                                      Hypothesis hypothesis, Duplex duplex,
                                      long long trials, uint64_t seed) {
  check_trials(trials);
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  Xoshiro256pp rng(seed);
  SampleSource src(cfg, hypothesis, duplex, rng);
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (long long trial = 0; trial < trials; ++trial) {
    const double m = energy_metric(src, n.n);
    const double d = m - mean;
    mean += d / static_cast<double>(trial + 1);
    m2 += d * (m - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  MetricMoments out;
  out.mean = mean;
  out.variance = var;
  out.se_mean = std::sqrt(var / static_cast<double>(trials));
  out.se_variance = var * std::sqrt(2.0 / static_cast<double>(trials - 1));
  out.trials = trials;
  return out;
}

namespace {

// Continuously evolving alternating ON/OFF process. A long warm-up takes
// the initial draw to stationarity for every ON model.
class PuProcess {
 public:
  PuProcess(const TrafficModel& model, OnModel on_model, Xoshiro256pp& rng)
      : lambda_off_(model.lambda_off),
        lambda_on_(on_rate(model)),
        on_model_(on_model),
        rng_(rng) {
    on_ = rng_.uniform01() < model.beta;
    remaining_ = on_ ? draw_on() : draw_off();
    const double cycle = 1.0 / lambda_off_ + 1.0 / lambda_on_;
    advance(64.0 * cycle);
  }

  bool on() const { return on_; }

  void advance(double dt) { advance_collect(dt); }

  // Advances the clock by dt and returns how much of it the PU spent ON.
  double advance_collect(double dt) {
    double on_time = 0.0;
    while (dt > 0.0) {
      if (remaining_ > dt) {
        if (on_) on_time += dt;
        remaining_ -= dt;
        return on_time;
      }
      if (on_) on_time += remaining_;
      dt -= remaining_;
      on_ = !on_;
      remaining_ = on_ ? draw_on() : draw_off();
    }
    return on_time;
  }

 private:
  double exponential(double rate) { return -std::log(rng_.uniform_open01()) / rate; }

  double draw_off() { return exponential(lambda_off_); }

  double draw_on() {
    switch (on_model_) {
      case OnModel::kExponential:
        return exponential(lambda_on_);
      case OnModel::kDeterministic:
        return 1.0 / lambda_on_;
      case OnModel::kErlang2:
        return exponential(2.0 * lambda_on_) + exponential(2.0 * lambda_on_);
    }
    return exponential(lambda_on_);
  }

  double lambda_off_;
  double lambda_on_;
  OnModel on_model_;
  Xoshiro256pp& rng_;
  bool on_ = false;
  double remaining_ = 0.0;
};

}  // namespace

SystemTrialResult simulate_system(const TrafficModel& model,
                                  const FrameSchedule& sched,
                                  const SensingConfig& sense,
                                  const LinkModel& link, long long frames,
                                  uint64_t seed, DetectorDraw detector,
                                  OnModel on_model) {
  check_trials(frames);
  sched.validate();
  Xoshiro256pp rng(seed);
  PuProcess pu(model, on_model, rng);

  const bool ts = sched.mode == SuMode::kTransmitSense;
  const bool tr = sched.mode == SuMode::kTransmitReceive;

  // Verdict probabilities for the analytic detector path.
  const double p_busy_given_on0 = pd_hd(sense, sched.t_s0);
  const double p_busy_given_off0 = pf_hd(sense, sched.t_s0);
  double p_busy_given_on_w = 0.0, p_busy_given_off_w = 0.0;
  if (ts) {
    p_busy_given_on_w = pd_fd(sense, sched.t_si);
    p_busy_given_off_w = pf_fd(sense, sched.t_si);
  }

  auto verdict_busy = [&](double t_window, Duplex duplex, double p_on,
                          double p_off) {
    if (detector == DetectorDraw::kAnalytic) {
      const double p = pu.on() ? p_on : p_off;
      return rng.uniform01() < p;
    }
    SampleSource src(sense, pu.on() ? Hypothesis::kBusy : Hypothesis::kIdle,
                     duplex, rng);
    const auto n = SampleCount::from_duration(t_window, sense.f_s);
    return energy_metric(src, n.n) > sense.gamma;
  };

  // Throughput credited to a clean frame, matching the analytic rate models.
  double rate_factor;
  if (tr) {
    const double fwd = sched.t / (sched.t + sched.t_s0) *
                       std::log2(1.0 + snr_tr(link, TrNode::kNodeJ));
    const double rev = sched.t_r > 0.0
                           ? sched.t_r / (sched.t_r + sched.t_s0) *
                                 std::log2(1.0 + snr_tr(link, TrNode::kNodeI))
                           : 0.0;
    rate_factor = fwd + rev;
  } else {
    rate_factor = sched.t / (sched.t + sched.t_s0) *
                  std::log2(1.0 + snr_to(link));
  }
  const double frame_tail =
      tr && sched.t_r > sched.t ? sched.t_r - sched.t : 0.0;

  SystemTrialResult out;
  out.frames = frames;
  double throughput_acc = 0.0;

  for (long long frame = 0; frame < frames; ++frame) {
    pu.advance(sched.t_s0);
    const bool busy = verdict_busy(sched.t_s0, Duplex::kHalf,
                                   p_busy_given_on0, p_busy_given_off0);
    if (busy) {
      pu.advance(sched.t + frame_tail);
      continue;
    }
    ++out.attempts;
    double on_time = 0.0;
    if (!ts) {
      on_time = pu.advance_collect(sched.t);
    } else {
      double remaining = sched.t;
      long long window = 0;
      bool aborted = false;
      while (remaining > 0.0 && !aborted) {
        const double seg = std::min(sched.t_si, remaining);
        on_time += pu.advance_collect(seg);
        remaining -= seg;
        ++window;
        // A verdict fires only at the end of a full window, and only for
        // the first m windows.
        if (seg == sched.t_si && window <= sched.m && remaining > 0.0) {
          aborted = verdict_busy(sched.t_si, Duplex::kFull, p_busy_given_on_w,
                                 p_busy_given_off_w);
        }
      }
      if (remaining > 0.0) pu.advance(remaining);
    }
    pu.advance(frame_tail);
    if (on_time > 0.0) {
      ++out.collisions;
      out.overlap_time_total += on_time;
    } else {
      throughput_acc += rate_factor;
    }
  }

  if (out.attempts > 0) {
    out.collision_rate = static_cast<double>(out.collisions) /
                         static_cast<double>(out.attempts);
    out.throughput_estimate =
        throughput_acc / static_cast<double>(out.attempts);
  }
  return out;
}

}  // namespace fdcr
