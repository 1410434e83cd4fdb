#include "fdcr/dettheory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fdcr/errors.hpp"
#include "fdcr/qfunc.hpp"

namespace fdcr {

SensingConfig::SensingConfig(double chi_, double alpha_s_, double alpha_l_,
                             double sigma_w2_, double gamma_, double f_s_)
    : chi(chi_),
      alpha_s(alpha_s_),
      alpha_l(alpha_l_),
      sigma_w2(sigma_w2_),
      gamma(gamma_),
      f_s(f_s_) {
  if (!(chi >= 0.0 && chi <= 1.0))
    throw std::invalid_argument("SensingConfig: chi must be in [0, 1]");
  if (!(alpha_s > 0.0))
    throw std::invalid_argument("SensingConfig: alpha_s must be positive");
  if (!(alpha_l > 0.0))
    throw std::invalid_argument("SensingConfig: alpha_l must be positive");
  if (!(sigma_w2 > 0.0))
    throw std::invalid_argument("SensingConfig: sigma_w2 must be positive");
  if (!(gamma > 0.0))
    throw std::invalid_argument("SensingConfig: gamma must be positive");
  if (!(f_s > 0.0))
    throw std::invalid_argument("SensingConfig: f_s must be positive");
}

SensingConfig SensingConfig::with_gamma(double new_gamma) const {
  return SensingConfig(chi, alpha_s, alpha_l, sigma_w2, new_gamma, f_s);
}

SensingConfig SensingConfig::with_chi(double new_chi) const {
  return SensingConfig(new_chi, alpha_s, alpha_l, sigma_w2, gamma, f_s);
}

SampleCount SampleCount::from_duration(double t_s, double f_s) {
  if (!(t_s > 0.0)) {
    throw std::domain_error("SampleCount: sensing duration must be positive");
  }
  const long long n = std::llround(t_s * f_s);
  if (n < 1) {
    throw ConfigError("SampleCount: t_s = " + std::to_string(t_s) +
                      " s rounds to zero samples at f_s = " +
                      std::to_string(f_s) + " Hz");
  }
  return SampleCount{n};
}

DetectorMoments moments_h0(const SensingConfig& cfg, SampleCount n) {
  const double sigma_s2 = cfg.alpha_s * cfg.sigma_w2;
  const double chi2 = cfg.chi * cfg.chi;
  const double mean = chi2 * sigma_s2 + cfg.sigma_w2;
  const double variance = (2.0 * chi2 * cfg.alpha_s + 1.0) * cfg.sigma_w2 *
                          cfg.sigma_w2 / static_cast<double>(n.n);
  return DetectorMoments{mean, variance};
}

DetectorMoments moments_h1(const SensingConfig& cfg, SampleCount n) {
  const double sigma_s2 = cfg.alpha_s * cfg.sigma_w2;
  const double sigma_l2 = cfg.alpha_l * cfg.sigma_w2;
  const double chi2 = cfg.chi * cfg.chi;
  const double mean = sigma_l2 + chi2 * sigma_s2 + cfg.sigma_w2;
  const double variance =
      (2.0 * chi2 * cfg.alpha_s + 2.0 * chi2 * cfg.alpha_s * cfg.alpha_l +
       2.0 * cfg.alpha_l + 1.0) *
      cfg.sigma_w2 * cfg.sigma_w2 / static_cast<double>(n.n);
  return DetectorMoments{mean, variance};
}

DetectorMoments moments_h0_general(const SensingConfig& cfg, SampleCount n,
                                   double e_s4, double e_w4) {
  const double sigma_s2 = cfg.alpha_s * cfg.sigma_w2;
  const double chi2 = cfg.chi * cfg.chi;
  const double mean = chi2 * sigma_s2 + cfg.sigma_w2;
  const double diff = chi2 * sigma_s2 - cfg.sigma_w2;
  const double variance =
      (chi2 * chi2 * e_s4 + e_w4 - diff * diff) / static_cast<double>(n.n);
  if (!(variance > 0.0)) {
    throw std::invalid_argument("moments_h0_general: inconsistent moments");
  }
  return DetectorMoments{mean, variance};
}

DetectorMoments moments_h1_general(const SensingConfig& cfg, SampleCount n,
                                   double e_l4, double e_s4, double e_w4) {
  const double sigma_s2 = cfg.alpha_s * cfg.sigma_w2;
  const double sigma_l2 = cfg.alpha_l * cfg.sigma_w2;
  const double chi2 = cfg.chi * cfg.chi;
  const double mean = sigma_l2 + chi2 * sigma_s2 + cfg.sigma_w2;
  const double diff = sigma_l2 - chi2 * sigma_s2 - cfg.sigma_w2;
  const double variance = (e_l4 + chi2 * chi2 * e_s4 + e_w4 - diff * diff +
                           4.0 * chi2 * sigma_s2 * cfg.sigma_w2) /
                          static_cast<double>(n.n);
  if (!(variance > 0.0)) {
    throw std::invalid_argument("moments_h1_general: inconsistent moments");
  }
  return DetectorMoments{mean, variance};
}

double pf_fd(const SensingConfig& cfg, double t_s) {
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  const double c2as = cfg.chi * cfg.chi * cfg.alpha_s;
  const double arg = (cfg.gamma / cfg.sigma_w2 - c2as - 1.0) *
                     std::sqrt(static_cast<double>(n.n) / (2.0 * c2as + 1.0));
  return q_function(arg);
}

double pd_fd(const SensingConfig& cfg, double t_s) {
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  const double c2as = cfg.chi * cfg.chi * cfg.alpha_s;
  const double denom =
      2.0 * c2as + 2.0 * c2as * cfg.alpha_l + 2.0 * cfg.alpha_l + 1.0;
  const double arg = (cfg.gamma / cfg.sigma_w2 - c2as - cfg.alpha_l - 1.0) *
                     std::sqrt(static_cast<double>(n.n) / denom);
  return q_function(arg);
}

double pf_hd(const SensingConfig& cfg, double t_s) {
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  const double arg = (cfg.gamma / cfg.sigma_w2 - 1.0) *
                     std::sqrt(static_cast<double>(n.n));
  return q_function(arg);
}

double pd_hd(const SensingConfig& cfg, double t_s) {
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  const double arg =
      (cfg.gamma / cfg.sigma_w2 - cfg.alpha_l - 1.0) *
      std::sqrt(static_cast<double>(n.n) / (2.0 * cfg.alpha_l + 1.0));
  return q_function(arg);
}

double pf(const SensingConfig& cfg, double t_s, Duplex duplex) {
  return duplex == Duplex::kFull ? pf_fd(cfg, t_s) : pf_hd(cfg, t_s);
}

double pd(const SensingConfig& cfg, double t_s, Duplex duplex) {
  return duplex == Duplex::kFull ? pd_fd(cfg, t_s) : pd_hd(cfg, t_s);
}

double threshold_for_pf(const SensingConfig& cfg, double t_s, double target_pf,
                        Duplex duplex) {
  if (!(target_pf > 0.0 && target_pf < 1.0)) {
    throw std::invalid_argument("threshold_for_pf: target must be in (0, 1)");
  }
  const auto n = SampleCount::from_duration(t_s, cfg.f_s);
  const double z = inverse_q(target_pf);
  double gamma;
  if (duplex == Duplex::kHalf) {
    gamma = cfg.sigma_w2 * (1.0 + z / std::sqrt(static_cast<double>(n.n)));
  } else {
    const double c2as = cfg.chi * cfg.chi * cfg.alpha_s;
    gamma = cfg.sigma_w2 *
            (1.0 + c2as +
             z * std::sqrt((2.0 * c2as + 1.0) / static_cast<double>(n.n)));
  }
  if (!(gamma > 0.0)) {
    throw InfeasibleError(
        "threshold_for_pf: no positive threshold reaches the target");
  }
  return gamma;
}

}  // namespace fdcr
