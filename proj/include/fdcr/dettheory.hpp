#pragma once

#include <cstdint>

namespace fdcr {

enum class Duplex { kHalf, kFull };

// Energy-detector parameters. SNRs are stored linear; dB conversion happens
// at the configuration boundary only. All powers share the units of
// sigma_w2 (normalize to sigma_w2 = 1 unless there is a reason not to).
struct SensingConfig {
  double chi;       // residual self-interference factor, 0 = perfect suppression
  double alpha_s;   // own-signal SNR at the node's receiver (sigma_s^2 / sigma_w^2)
  double alpha_l;   // PU SNR at the node's receiver (sigma_l^2 / sigma_w^2)
  double sigma_w2;  // noise variance
  double gamma;     // decision threshold, same units as sigma_w2
  double f_s;       // sampling rate, samples/second

  SensingConfig(double chi, double alpha_s, double alpha_l, double sigma_w2,
                double gamma, double f_s);

  SensingConfig with_gamma(double new_gamma) const;
  SensingConfig with_chi(double new_chi) const;
};

// Number of detector samples in a sensing window: round(t_s * f_s), at
// least 1 or the window is unusable.
struct SampleCount {
  long long n;

  static SampleCount from_duration(double t_s, double f_s);
};

struct DetectorMoments {
  double mean;      // of the averaged energy metric
  double variance;
};

// Gaussian approximation of the energy metric under the idle hypothesis,
// specialized to CSCG noise and constant-envelope (PSK) signals.
DetectorMoments moments_h0(const SensingConfig& cfg, SampleCount n);

// Same under the busy hypothesis.
DetectorMoments moments_h1(const SensingConfig& cfg, SampleCount n);

// General fourth-moment forms, for signal models other than PSK/CSCG.
// e_s4, e_l4, e_w4 are E|s|^4, E|l|^4, E|w|^4 of the unscaled signals.
DetectorMoments moments_h0_general(const SensingConfig& cfg, SampleCount n,
                                   double e_s4, double e_w4);
DetectorMoments moments_h1_general(const SensingConfig& cfg, SampleCount n,
                                   double e_l4, double e_s4, double e_w4);

// False-alarm / detection probabilities for a sensing window of t_s
// seconds. The _fd variants account for residual self-interference while
// transmitting; the _hd variants are the quiet-receiver forms.
double pf_fd(const SensingConfig& cfg, double t_s);
double pd_fd(const SensingConfig& cfg, double t_s);
double pf_hd(const SensingConfig& cfg, double t_s);
double pd_hd(const SensingConfig& cfg, double t_s);

double pf(const SensingConfig& cfg, double t_s, Duplex duplex);
double pd(const SensingConfig& cfg, double t_s, Duplex duplex);

// Threshold giving a requested false-alarm probability; cfg.gamma is
// ignored. Throws InfeasibleError when no positive threshold works.
double threshold_for_pf(const SensingConfig& cfg, double t_s, double target_pf,
                        Duplex duplex);

}  // namespace fdcr
