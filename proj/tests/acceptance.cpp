// Acceptance suite: executes each release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdcr/experiments.hpp"
#include "fdcr/qfunc.hpp"
#include "fdcr/rng.hpp"

using namespace fdcr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

SensingConfig vi_sensing(double chi, double gamma) {
  return SensingConfig(chi, 100.0, 0.0316227766016838, 1.0, gamma, 6e6);
}

LinkModel vi_link(double chi) {
  return LinkModel(100.0, 100.0, 1.1547819846894583, 1.1547819846894583, 1.0,
                   4.0, 1.0, 1.0, chi, chi);
}

double z_score(double estimate, double p, long long n) {
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return (estimate - p) / std::max(se, 1e-12);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- 1 ----

void criterion_1() {
  int points = 0;
  double worst = 0.0;
  for (double alpha_s : {1.0, 10.0, 31.6227766, 100.0}) {
    for (double alpha_l : {0.0316227766016838, 0.1, 1.0}) {
      for (double gamma : {0.95, 1.0, 1.02, 1.1, 1.8}) {
        for (double t_s : {5e-5, 1e-3}) {
          const SensingConfig cfg(0.0, alpha_s, alpha_l, 1.0, gamma, 6e6);
          worst = std::max(worst,
                           std::abs(pf_fd(cfg, t_s) - pf_hd(cfg, t_s)));
          worst = std::max(worst,
                           std::abs(pd_fd(cfg, t_s) - pd_hd(cfg, t_s)));
          ++points;
        }
      }
    }
  }
  report(1, "chi=0 reduces full-duplex sensing to half-duplex",
         worst <= 1e-12,
         "grid points: " + std::to_string(points) +
             ", worst |difference|: " + fmt(worst));
}

// ---------------------------------------------------------------- 2 ----

void criterion_2() {
  // The closed forms carry a Gaussian-approximation bias that decays like
  // 1/sqrt(N); the low-chi energy metric is the most skewed, so those
  // configurations use longer windows to stay well inside the binomial band.
  const long long trials = 100000;
  uint64_t seed = 52000;
  int configs = 0;
  int inside = 0;
  double worst_z = 0.0;
  auto run_one = [&](double chi, double t_s, double margin, Duplex duplex) {
    const auto cfg = vi_sensing(chi, 1.0 + chi * chi * 100.0 + margin);
    const double p_f = pf(cfg, t_s, duplex);
    const double p_d = pd(cfg, t_s, duplex);
    const auto rf = simulate_detector(cfg, t_s, Hypothesis::kIdle, duplex,
                                      trials, seed++);
    const auto rd = simulate_detector(cfg, t_s, Hypothesis::kBusy, duplex,
                                      trials, seed++);
    const double zf = z_score(rf.decision_busy_fraction, p_f, trials);
    const double zd = z_score(rd.decision_busy_fraction, p_d, trials);
    worst_z = std::max({worst_z, std::abs(zf), std::abs(zd)});
    if (std::abs(zf) < 3.0 && std::abs(zd) < 3.0) ++inside;
    ++configs;
  };
  for (double chi : {0.0, 0.1}) {  // N = 6000
    for (double t_s : {1e-3}) {
      for (double margin : {0.010, 0.013, 0.016}) {
        run_one(chi, t_s, margin, Duplex::kFull);
      }
    }
    run_one(chi, 2e-3, 0.011, Duplex::kFull);  // N = 12000
  }
  for (double chi : {0.2, 0.5}) {  // less skewed; N = 1800 and 3000
    for (double t_s : {3e-4, 5e-4}) {
      for (double margin : {0.012, 0.024}) {
        run_one(chi, t_s, margin, Duplex::kFull);
      }
    }
  }
  // Half-duplex coverage.
  for (double t_s : {1e-3, 2e-3}) {
    for (double margin : {0.010, 0.015, 0.020}) {
      run_one(0.0, t_s, margin, Duplex::kHalf);
    }
  }
  report(2, "detector closed forms sit inside 3-sigma of sampling",
         inside == configs && configs == 30,
         std::to_string(inside) + "/" + std::to_string(configs) +
             " configurations, worst |z|: " + fmt(worst_z));
}

// ---------------------------------------------------------------- 3 ----

struct CollisionCase {
  double beta, t_s0, t, gamma;
  long long m;
};

void criterion_3() {
  // Frame estimates are binomial only when consecutive frames decorrelate,
  // so every case keeps the PU relaxation time short against the frame
  // (lambda_off * t / beta >= ~3).
  const long long frames = 100000;
  std::vector<CollisionCase> cases;
  for (double beta : {0.25, 0.4, 0.6}) {
    for (double t : {1.5, 2.5}) {
      for (double t_s0 : {2e-3, 4.5e-3}) {
        // Keep the mixing ratio comfortable at the highest load.
        const double t_used = beta > 0.5 && t < 2.0 ? 2.2 : t;
        cases.push_back({beta, t_s0, t_used, 1.0218, 80});
      }
    }
  }
  for (double beta : {0.3, 0.5}) {
    cases.push_back({beta, 3e-3, 2.0, 1.026, 40});
  }
  cases.push_back({0.35, 4e-3, 1.8, 1.03, 120});
  cases.push_back({0.5, 4e-3, 3.5, 1.0218, 80});
  // Window-survival-chain cases: threshold above the full-duplex idle mean
  // so in-transmission alarms are rare and later windows matter.
  for (double beta : {0.3, 0.45}) {
    for (double t : {2.0, 4.0}) {
      cases.push_back({beta, 5e-3, t, -1.0, 40});
    }
  }

  const auto link = vi_link(0.235);
  uint64_t seed = 90000;
  int per_mode_ok[3] = {0, 0, 0};
  bool ordering_ok = true;
  double worst_z = 0.0;
  int n_cases = 0;
  for (const CollisionCase& c : cases) {
    const TrafficModel model(1.0, c.beta);
    SensingConfig sense = vi_sensing(0.235, 1.0);
    if (c.gamma > 0.0) {
      sense = sense.with_gamma(c.gamma);
    } else {
      // Place gamma for a 5% per-window false alarm in the FD stage.
      const auto probe =
          FrameSchedule::transmit_sense_equal_windows(c.t_s0, c.t, c.m);
      sense = sense.with_gamma(
          threshold_for_pf(sense, probe.t_si, 0.05, Duplex::kFull));
    }
    const auto to = FrameSchedule::transmit_only(c.t_s0, c.t);
    const auto ts =
        FrameSchedule::transmit_sense_equal_windows(c.t_s0, c.t, c.m);
    const auto tr = FrameSchedule::transmit_receive(c.t_s0, c.t, c.t);

    const double p_to = collision_to_imperfect(model, to, sense).total;
    const double p_ts = collision_ts_imperfect(model, ts, sense).total;
    const double p_tr = p_to;  // TR shares the TO exposure

    if (p_ts > p_to + 1e-15) ordering_ok = false;

    const FrameSchedule* scheds[3] = {&to, &ts, &tr};
    const double analytic[3] = {p_to, p_ts, p_tr};
    for (int mode = 0; mode < 3; ++mode) {
      const auto r = simulate_system(model, *scheds[mode], sense, link, frames,
                                     seed++);
      const double z = z_score(r.collision_rate, analytic[mode], r.attempts);
      worst_z = std::max(worst_z, std::abs(z));
      if (std::abs(z) < 3.0) ++per_mode_ok[mode];
    }
    ++n_cases;
  }
  const bool pass = ordering_ok && per_mode_ok[0] == n_cases &&
                    per_mode_ok[1] == n_cases && per_mode_ok[2] == n_cases;
  report(3, "collision closed forms sit inside 3-sigma of frame simulation",
         pass,
         "TO " + std::to_string(per_mode_ok[0]) + "/20, TS " +
             std::to_string(per_mode_ok[1]) + "/20, TR " +
             std::to_string(per_mode_ok[2]) + "/20, worst |z|: " +
             fmt(worst_z) + (ordering_ok ? ", TS<=TO everywhere"
                                         : ", TS<=TO VIOLATED"));
}

// ---------------------------------------------------------------- 4 ----

void criterion_4() {
  const TrafficModel model(0.01, 0.5);
  const double v = f_tau(model, 100.0);
  const bool spot = std::abs(v - 0.6321205588285577) <= 1e-12;

  // Perfect detection cancels the missed-detection mass algebraically.
  const auto cb = collision_to_imperfect_probs(model, 100.0, 0.1, 1.0);
  const bool algebra = std::abs(cb.total - v) <= 1e-15 && cb.term_a == 0.0;

  report(4, "closed-form spot values", spot && algebra,
         "F_tau(100s) = " + fmt(v) + ", |P_TO(pd=1) - F_tau|: " +
             fmt(std::abs(cb.total - v)));
}

// ---------------------------------------------------------------- 5 ----

bool interior_max(const std::vector<double>& values, size_t* argmax) {
  const size_t best =
      std::max_element(values.begin(), values.end()) - values.begin();
  if (argmax) *argmax = best;
  return best > 0 && best + 1 < values.size() &&
         values[best] > values.front() && values[best] > values.back();
}

void criterion_5() {
  const TrafficModel model(0.01, 0.5);
  const auto sense = vi_sensing(0.235, 1.0218);
  const auto link = vi_link(0.235);

  // Throughput against the transmission time: rises, peaks, falls.
  std::vector<double> vs_t;
  {
    GridSpec grid{GridSpec::Scale::kLog, 0.02, 20.0, 40};
    for (double t : grid.values()) {
      const auto sched = FrameSchedule::transmit_only(4e-3, t);
      const auto cb = collision_to_imperfect(model, sched, sense);
      vs_t.push_back(rate_to(link, sched, cb.total).value);
    }
  }
  size_t arg_t = 0;
  const bool t_shape = interior_max(vs_t, &arg_t);

  // Throughput against the initial sensing time.
  std::vector<double> vs_ts0;
  {
    GridSpec grid{GridSpec::Scale::kLog, 5e-4, 2e-2, 40};
    for (double t_s0 : grid.values()) {
      const auto sched = FrameSchedule::transmit_only(t_s0, 0.1);
      const auto cb = collision_to_imperfect(model, sched, sense);
      vs_ts0.push_back(rate_to(link, sched, cb.total).value);
    }
  }
  size_t arg_s = 0;
  const bool ts0_shape = interior_max(vs_ts0, &arg_s);

  // Bidirectional rate degrades monotonically with the residual factor.
  bool chi_monotone = true;
  {
    const auto sched = FrameSchedule::transmit_receive(4e-3, 1.0, 1.0);
    double prev = 1e300;
    for (double chi : {0.0, 0.1, 0.25, 0.5}) {
      const auto cb = collision_to_imperfect(model, sched, sense);
      const double r = rate_tr(vi_link(chi), sched, cb.total).value;
      if (!(r < prev)) chi_monotone = false;
      prev = r;
    }
  }

  report(5, "tradeoff curve shapes", t_shape && ts0_shape && chi_monotone,
         std::string("interior max vs T: ") + (t_shape ? "yes" : "NO") +
             ", vs t_s0: " + (ts0_shape ? "yes" : "NO") +
             ", TR rate falls with chi: " + (chi_monotone ? "yes" : "NO"));
}

// ------------------------------------------------------------- 6, 7 ----

ExperimentConfig strategy_config(bool sensitivity) {
  json doc = preset_json("section-6-defaults");
  doc["experiment"] = "strategy-sweep";
  doc["strategy"]["on_model_sensitivity"] = sensitivity;
  doc["strategy"]["sensitivity_frames"] = 20000;
  return parse_config(doc);
}

struct Vi6 {
  Optimum p1, p2;
  BetaStarResult betas;
};

Vi6 solve_vi6() {
  const ExperimentConfig cfg = strategy_config(false);
  const SearchSpace space = cfg.optimize->search_space(*cfg.schedule);
  Vi6 out;
  out.p1 = solve_p1(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                    cfg.optimize->constraint);
  out.p2 = solve_p2(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                    cfg.optimize->constraint);
  out.betas = find_beta_star(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                             cfg.optimize->constraint,
                             cfg.strategy->beta_grid.values());
  return out;
}

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * target;
}

void criterion_6(const Vi6& vi) {
  std::vector<std::string> misses;
  if (!vi.p1.feasible) misses.push_back("P1 infeasible");
  if (!vi.p2.feasible) misses.push_back("P2 infeasible");
  if (vi.p1.feasible && !within(vi.p1.t_s0_star, 6.6e-3, 0.30)) {
    misses.push_back("TS t_s0*=" + fmt(vi.p1.t_s0_star) + "s vs 6.6ms");
  }
  if (vi.p1.feasible && !within(vi.p1.t_star, 1.28, 0.30)) {
    misses.push_back("TS T*=" + fmt(vi.p1.t_star) + "s vs 1.28s");
  }
  if (vi.p2.feasible && !within(vi.p2.t_s0_star, 7e-3, 0.30)) {
    misses.push_back("TR t_s0*=" + fmt(vi.p2.t_s0_star) + "s vs 7ms");
  }
  if (vi.p2.feasible && !within(vi.p2.t_star, 0.83, 0.30)) {
    misses.push_back("TR T*=" + fmt(vi.p2.t_star) + "s vs 0.83s");
  }
  if (std::abs(vi.betas.beta_star - 0.38) > 0.05) {
    misses.push_back("beta*=" + fmt(vi.betas.beta_star) + " vs 0.38+-0.05");
  }

  std::string detail = "TS(" + fmt(vi.p1.t_s0_star) + "s, " +
                       fmt(vi.p1.t_star) + "s), TR(" + fmt(vi.p2.t_s0_star) +
                       "s, " + fmt(vi.p2.t_star) + "s), beta*=" +
                       fmt(vi.betas.beta_star);
  if (misses.empty()) {
    report(6, "reproduction of the reported optima", true, detail);
    return;
  }

  // Out of tolerance: the run report must carry the ON-model sensitivity
  // sweep for the criterion to stand.
  const fs::path dir = fs::temp_directory_path() / "fdcr_acceptance_c6";
  fs::remove_all(dir);
  const RunResult run = run_experiment(strategy_config(true), dir);
  bool sweep_present = fs::exists(dir / "strategy_sensitivity.csv");
  int sweep_rows = 0;
  if (sweep_present) {
    std::ifstream in(dir / "strategy_sensitivity.csv");
    std::string line;
    while (std::getline(in, line)) ++sweep_rows;
  }
  sweep_present = sweep_present && sweep_rows > 25 &&
                  run.summary.contains("sensitivity");

  std::string miss_list;
  for (const auto& m : misses) miss_list += (miss_list.empty() ? "" : "; ") + m;
  report(6, "reproduction of the reported optima", sweep_present,
         detail + " | out of tolerance: " + miss_list +
             " | ON-model sensitivity sweep in run report: " +
             (sweep_present ? "yes (" + std::to_string(sweep_rows) + " rows)"
                            : "MISSING"));
}

void criterion_7(const Vi6& vi) {
  const auto& sweep = vi.betas.sweep;
  int switches = 0;
  bool tr_then_ts = true;
  for (size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].action != sweep[i - 1].action) ++switches;
  }
  const size_t cross = std::find_if(sweep.begin(), sweep.end(),
                                    [](const StrategyDecision& d) {
                                      return d.action ==
                                             StrategyDecision::Action::
                                                 kTransmitSense;
                                    }) -
                       sweep.begin();
  for (size_t i = 0; i < sweep.size(); ++i) {
    const bool want_tr = i < cross;
    const bool is_tr = sweep[i].action ==
                       StrategyDecision::Action::kTransmitReceive;
    if (want_tr != is_tr) tr_then_ts = false;
  }
  const bool pass = switches == 1 && tr_then_ts && cross > 0 &&
                    cross < sweep.size();
  report(7, "threshold structure of the mode decision", pass,
         "action switches: " + std::to_string(switches) +
             ", TR below / TS above: " + (tr_then_ts ? "yes" : "NO") +
             ", switch at beta=" +
             (cross < sweep.size() ? fmt(sweep[cross].beta) : "none"));
}

// ---------------------------------------------------------------- 8 ----

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_8() {
  json doc = preset_json("section-6-defaults");
  doc["experiment"] = "sense-curves";
  doc["sweep"]["grid"]["points"] = 25;
  const ExperimentConfig curves = parse_config(doc);

  json sim_doc = preset_json("section-6-defaults");
  sim_doc["experiment"] = "simulate";
  sim_doc["sensing"]["gamma"] = "6.55 linear";
  sim_doc["simulate"] = {{"target", "detector"}, {"trials", 30000},
                         {"hypothesis", "H0"}, {"duplex", "FD"},
                         {"t_s", "0.1 ms"}};
  const ExperimentConfig sim = parse_config(sim_doc);

  bool pass = true;
  std::string detail;
  for (const auto& [cfg, name] :
       {std::pair<const ExperimentConfig&, std::string>{curves,
                                                        "sense_curves.csv"},
        {sim, "simulate.csv"}}) {
    const fs::path a = fs::temp_directory_path() / "fdcr_acceptance_c8a";
    const fs::path b = fs::temp_directory_path() / "fdcr_acceptance_c8b";
    fs::remove_all(a);
    fs::remove_all(b);
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    const bool same = slurp(a / name) == slurp(b / name) &&
                      !slurp(a / name).empty();
    if (!same) pass = false;
    detail += name + (same ? " identical" : " DIFFERS") + "; ";
  }
  report(8, "reruns are byte-identical", pass, detail);
}

}  // namespace

int main() {
  std::printf("fdcr acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  const Vi6 vi = solve_vi6();
  criterion_6(vi);
  criterion_7(vi);
  criterion_8();
  std::printf("%s (%d criterion%s failed)\n",
              g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
