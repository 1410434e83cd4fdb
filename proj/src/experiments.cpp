#include "fdcr/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "fdcr/csv.hpp"
#include "fdcr/errors.hpp"
#include "fdcr/rng.hpp"

namespace fdcr {

using nlohmann::json;

namespace {

SensingConfig curve_sensing(const SensingConfig& base, double chi,
                            const CurveGammaPolicy& policy) {
  SensingConfig cfg = base.with_chi(chi);
  if (policy.kind == CurveGammaPolicy::Kind::kH0Offset) {
    const double gamma =
        cfg.sigma_w2 * (1.0 + chi * chi * cfg.alpha_s + policy.offset);
    cfg = cfg.with_gamma(gamma);
  }
  return cfg;
}

void run_sense_curves(const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir, RunResult& result) {
  const auto& sweep = *cfg.sweep;
  if (sweep.axis != "t_s") {
    throw ConfigError("sense-curves: sweep.axis must be 't_s'");
  }
  CsvWriter csv(out_dir / cfg.output,
                {"t_s_seconds", "chi", "pf_fd", "pd_fd", "pf_hd", "pd_hd"});
  const std::vector<double> grid = sweep.grid.values();
  for (double chi : sweep.chi_values) {
    const SensingConfig c = curve_sensing(*cfg.sensing, chi, sweep.gamma_policy);
    for (double t_s : grid) {
      csv.row({t_s, chi, pf_fd(c, t_s), pd_fd(c, t_s), pf_hd(c, t_s),
               pd_hd(c, t_s)});
    }
  }
  result.artifacts.push_back(cfg.output);
}

void run_collision_curves(const ExperimentConfig& cfg,
                          const std::filesystem::path& out_dir,
                          RunResult& result) {
  const auto& sweep = *cfg.sweep;
  if (sweep.axis != "t" && sweep.axis != "t_s0") {
    throw ConfigError("collision-curves: sweep.axis must be 't' or 't_s0'");
  }
  CsvWriter csv(out_dir / cfg.output,
                {"mode", "sensing_quality", "t_s0_seconds", "t_seconds",
                 "collision", "term_a", "term_b", "w"});
  const std::vector<double> grid = sweep.grid.values();
  const std::string quality_name =
      sweep.quality == SensingQuality::kPerfect ? "perfect" : "imperfect";
  for (SuMode mode : sweep.modes) {
    for (double v : grid) {
      const double t_s0 = sweep.axis == "t_s0" ? v : cfg.schedule->t_s0;
      const double t = sweep.axis == "t" ? v : cfg.schedule->t;
      const FrameSchedule sched = cfg.schedule->build_for_mode(mode, t_s0, t);
      const CollisionBreakdown cb =
          collision(*cfg.traffic, sched, *cfg.sensing, sweep.quality);
      csv.row({mode_name(mode), quality_name, t_s0, t, cb.total, cb.term_a,
               cb.term_b, cb.w});
    }
  }
  result.artifacts.push_back(cfg.output);
}

ThroughputReport mode_rate(SuMode mode, const LinkModel& link,
                           const FrameSchedule& sched,
                           const CollisionBreakdown& cb) {
  switch (mode) {
    case SuMode::kTransmitOnly:
      return rate_to(link, sched, cb.total);
    case SuMode::kTransmitSense:
      return rate_ts(link, sched, cb);
    case SuMode::kTransmitReceive:
      return rate_tr(link, sched, cb.total);
  }
  throw ConfigError("unknown mode");
}

void run_throughput_curves(const ExperimentConfig& cfg,
                           const std::filesystem::path& out_dir,
                           RunResult& result) {
  const auto& sweep = *cfg.sweep;
  if (sweep.axis != "t" && sweep.axis != "t_s0" && sweep.axis != "chi") {
    throw ConfigError("throughput-curves: sweep.axis must be t, t_s0 or chi");
  }
  CsvWriter csv(out_dir / cfg.output,
                {"mode", "chi", "t_s0_seconds", "t_seconds", "collision",
                 "rate", "forward", "reverse"});
  const std::vector<double> grid = sweep.grid.values();
  for (SuMode mode : sweep.modes) {
    for (double v : grid) {
      const double t_s0 = sweep.axis == "t_s0" ? v : cfg.schedule->t_s0;
      const double t = sweep.axis == "t" ? v : cfg.schedule->t;
      SensingConfig sense = *cfg.sensing;
      LinkModel link = *cfg.link;
      if (sweep.axis == "chi") {
        sense = sense.with_chi(v);
        link.chi_i = v;
        link.chi_j = v;
      }
      const FrameSchedule sched = cfg.schedule->build_for_mode(mode, t_s0, t);
      const CollisionBreakdown cb =
          collision(*cfg.traffic, sched, sense, sweep.quality);
      const ThroughputReport r = mode_rate(mode, link, sched, cb);
      csv.row({mode_name(mode), sense.chi, t_s0, t, cb.total, r.value,
               r.forward, r.reverse});
    }
  }
  result.artifacts.push_back(cfg.output);
}

void run_optimize(const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir, RunResult& result) {
  const bool p1 = cfg.experiment == Experiment::kOptimizeP1;
  const SearchSpace space = cfg.optimize->search_space(*cfg.schedule);
  const Optimum opt =
      p1 ? solve_p1(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                    cfg.optimize->constraint)
         : solve_p2(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                    cfg.optimize->constraint);

  const std::string problem = p1 ? "p1-ts" : "p2-tr";
  CsvWriter csv(out_dir / cfg.output,
                {"problem", "t_s0_star_seconds", "t_star_seconds", "rate_star",
                 "collision_at_opt", "feasible"});
  csv.row({problem, opt.t_s0_star, opt.t_star, opt.rate_star,
           opt.collision_at_opt, static_cast<long long>(opt.feasible)});
  result.artifacts.push_back(cfg.output);

  std::cout << problem << ": t_s0* = " << format_csv_number(opt.t_s0_star)
            << " s, T* = " << format_csv_number(opt.t_star)
            << " s, rate* = " << format_csv_number(opt.rate_star)
            << " bits/s/Hz, collision* = "
            << format_csv_number(opt.collision_at_opt)
            << (opt.feasible ? "" : "  [INFEASIBLE]") << "\n";

  result.summary = {{"problem", problem},
                    {"t_s0_star_seconds", opt.t_s0_star},
                    {"t_star_seconds", opt.t_star},
                    {"rate_star", opt.rate_star},
                    {"collision_at_opt", opt.collision_at_opt},
                    {"feasible", opt.feasible}};
  if (!opt.feasible) {
    result.infeasible = true;
    result.message =
        problem + ": no grid point satisfies the collision constraint " +
        format_csv_number(cfg.optimize->constraint) +
        " (best achievable: " + format_csv_number(opt.collision_at_opt) + ")";
  }
}

const char* on_model_name(OnModel m) {
  switch (m) {
    case OnModel::kExponential: return "exponential";
    case OnModel::kDeterministic: return "deterministic";
    case OnModel::kErlang2: return "erlang2";
  }
  return "?";
}

// Re-estimates both modes' optimal rates by frame simulation under an
// alternative ON-period model, holding the analytically optimal durations.
json strategy_sensitivity(const ExperimentConfig& cfg,
                          const std::filesystem::path& out_dir,
                          const BetaStarResult& sweep, RunResult& result) {
  const std::string name = "strategy_sensitivity.csv";
  CsvWriter csv(out_dir / name,
                {"variant", "beta", "rate_ts", "rate_tr", "action"});
  json variants = json::array();

  uint64_t stream = 1;
  for (OnModel on_model :
       {OnModel::kExponential, OnModel::kDeterministic, OnModel::kErlang2}) {
    double beta_star = 1.0;
    bool ts_seen = false;
    for (const StrategyDecision& d : sweep.sweep) {
      const TrafficModel model(cfg.traffic->lambda_off, d.beta);
      double rate_ts_sim = 0.0;
      double rate_tr_sim = 0.0;
      if (d.ts_optimum.feasible) {
        const FrameSchedule sched = cfg.schedule->build_for_mode(
            SuMode::kTransmitSense, d.ts_optimum.t_s0_star,
            d.ts_optimum.t_star);
        rate_ts_sim = simulate_system(model, sched, *cfg.sensing, *cfg.link,
                                      cfg.strategy->sensitivity_frames,
                                      derive_stream_seed(cfg.seed, stream++),
                                      DetectorDraw::kAnalytic, on_model)
                          .throughput_estimate;
      }
      if (d.tr_optimum.feasible) {
        const FrameSchedule sched = cfg.schedule->build_for_mode(
            SuMode::kTransmitReceive, d.tr_optimum.t_s0_star,
            d.tr_optimum.t_star);
        rate_tr_sim = simulate_system(model, sched, *cfg.sensing, *cfg.link,
                                      cfg.strategy->sensitivity_frames,
                                      derive_stream_seed(cfg.seed, stream++),
                                      DetectorDraw::kAnalytic, on_model)
                          .throughput_estimate;
      }
      const bool tr_wins = rate_tr_sim > rate_ts_sim;
      if (!ts_seen && !tr_wins) {
        beta_star = d.beta;
        ts_seen = true;
      }
      csv.row({on_model_name(on_model), d.beta, rate_ts_sim, rate_tr_sim,
               tr_wins ? "TR" : "TS"});
    }
    variants.push_back({{"variant", on_model_name(on_model)},
                        {"beta_star", beta_star},
                        {"found_ts_region", ts_seen}});
  }

  // Unit reinterpretation of lambda_off (/ms instead of /s): transmission
  // scales shrink by the same factor, sensing durations do not.
  {
    const TrafficModel fast(cfg.traffic->lambda_off * 1e3, cfg.traffic->beta);
    SearchSpace space = cfg.optimize->search_space(*cfg.schedule);
    for (double& t : space.t_grid) t /= 1e3;
    const std::vector<double> betas = cfg.strategy->beta_grid.values();
    const BetaStarResult alt = find_beta_star(
        fast, *cfg.sensing, *cfg.link, space, cfg.optimize->constraint, betas);
    for (const StrategyDecision& d : alt.sweep) {
      csv.row({"lambda-per-ms", d.beta, d.rate_ts, d.rate_tr,
               d.action == StrategyDecision::Action::kTransmitReceive ? "TR"
                                                                      : "TS"});
    }
    variants.push_back({{"variant", "lambda-per-ms"},
                        {"beta_star", alt.beta_star},
                        {"found_ts_region", alt.crossing_found}});
  }

  result.artifacts.push_back(name);
  return variants;
}

void run_strategy_sweep(const ExperimentConfig& cfg,
                        const std::filesystem::path& out_dir,
                        RunResult& result) {
  const SearchSpace space = cfg.optimize->search_space(*cfg.schedule);
  const std::vector<double> betas = cfg.strategy->beta_grid.values();
  const BetaStarResult res =
      find_beta_star(*cfg.traffic, *cfg.sensing, *cfg.link, space,
                     cfg.optimize->constraint, betas);

  CsvWriter csv(out_dir / cfg.output,
                {"beta", "rate_ts", "rate_tr", "action", "ts_feasible",
                 "tr_feasible", "ts_t_s0_star", "ts_t_star", "tr_t_s0_star",
                 "tr_t_star"});
  for (const StrategyDecision& d : res.sweep) {
    csv.row({d.beta, d.rate_ts, d.rate_tr,
             d.action == StrategyDecision::Action::kTransmitReceive ? "TR"
                                                                    : "TS",
             static_cast<long long>(d.ts_optimum.feasible),
             static_cast<long long>(d.tr_optimum.feasible),
             d.ts_optimum.t_s0_star, d.ts_optimum.t_star,
             d.tr_optimum.t_s0_star, d.tr_optimum.t_star});
  }
  result.artifacts.push_back(cfg.output);

  std::cout << "beta* = " << format_csv_number(res.beta_star)
            << (res.crossing_found ? "" : "  [no crossing on the grid]")
            << ", crossings = " << res.crossings.size() << "\n";

  result.summary = {{"beta_star", res.beta_star},
                    {"crossing_found", res.crossing_found},
                    {"crossings", res.crossings}};
  if (cfg.strategy->on_model_sensitivity) {
    result.summary["sensitivity"] =
        strategy_sensitivity(cfg, out_dir, res, result);
  }
}

void run_simulate(const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir, RunResult& result) {
  const auto& sim = *cfg.simulate;
  if (sim.target == SimulateSpec::Target::kDetector) {
    CsvWriter csv(out_dir / cfg.output,
                  {"target", "hypothesis", "duplex", "t_s_seconds", "trials",
                   "analytic", "estimate", "std_err"});
    const SampleTrialResult r = simulate_detector(
        *cfg.sensing, sim.t_s, sim.hypothesis, sim.duplex, sim.trials,
        cfg.seed);
    const double analytic = sim.hypothesis == Hypothesis::kIdle
                                ? pf(*cfg.sensing, sim.t_s, sim.duplex)
                                : pd(*cfg.sensing, sim.t_s, sim.duplex);
    csv.row({"detector", sim.hypothesis == Hypothesis::kIdle ? "H0" : "H1",
             sim.duplex == Duplex::kHalf ? "HD" : "FD", sim.t_s, sim.trials,
             analytic, r.decision_busy_fraction, r.std_err});
    result.summary = {{"analytic", analytic},
                      {"estimate", r.decision_busy_fraction},
                      {"std_err", r.std_err}};
  } else {
    CsvWriter csv(out_dir / cfg.output,
                  {"target", "mode", "frames", "attempts", "collisions",
                   "collision_rate", "analytic_collision",
                   "throughput_estimate", "analytic_rate",
                   "overlap_time_total_seconds"});
    const FrameSchedule sched = cfg.schedule->build();
    const CollisionBreakdown cb = collision(*cfg.traffic, sched, *cfg.sensing,
                                            SensingQuality::kImperfect);
    const ThroughputReport rate = mode_rate(sched.mode, *cfg.link, sched, cb);
    const SystemTrialResult r =
        simulate_system(*cfg.traffic, sched, *cfg.sensing, *cfg.link,
                        sim.frames, cfg.seed, sim.detector, sim.on_model);
    csv.row({"system", mode_name(sched.mode), r.frames, r.attempts,
             r.collisions, r.collision_rate, cb.total, r.throughput_estimate,
             rate.value, r.overlap_time_total});
    result.summary = {{"collision_rate", r.collision_rate},
                      {"analytic_collision", cb.total},
                      {"throughput_estimate", r.throughput_estimate},
                      {"analytic_rate", rate.value}};
  }
  result.artifacts.push_back(cfg.output);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);

  RunResult result;
  switch (cfg.experiment) {
    case Experiment::kSenseCurves:
      run_sense_curves(cfg, out_dir, result);
      break;
    case Experiment::kCollisionCurves:
      run_collision_curves(cfg, out_dir, result);
      break;
    case Experiment::kThroughputCurves:
      run_throughput_curves(cfg, out_dir, result);
      break;
    case Experiment::kOptimizeP1:
    case Experiment::kOptimizeP2:
      run_optimize(cfg, out_dir, result);
      break;
    case Experiment::kStrategySweep:
      run_strategy_sweep(cfg, out_dir, result);
      break;
    case Experiment::kSimulate:
      run_simulate(cfg, out_dir, result);
      break;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  json meta = {
      {"tool", "fdcr"},
      {"version", kToolVersion},
      {"csv_schema", kCsvSchemaVersion},
      {"rng", kRngDescription},
      {"experiment", experiment_name(cfg.experiment)},
      {"seed", cfg.seed},
      {"config", cfg.resolved},
      {"artifacts", result.artifacts},
      {"summary", result.summary},
      {"wall_time_seconds", wall},
  };
  std::ofstream meta_out(out_dir / "run_metadata.json", std::ios::binary);
  meta_out << meta.dump(2) << "\n";
  result.artifacts.push_back("run_metadata.json");
  return result;
}

}  // namespace fdcr
