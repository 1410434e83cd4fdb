#pragma once

#include <vector>

#include "fdcr/throughput.hpp"

namespace fdcr {

// How in-transmission sensing windows follow the candidate transmission
// duration during the search.
struct TsiPolicy {
  enum class Kind { kEqualWindows, kFixed };
  Kind kind = Kind::kEqualWindows;
  long long m = 0;
  double t_si = 0;  // used by kFixed

  static TsiPolicy equal_windows(long long m);
  static TsiPolicy fixed(long long m, double t_si);
};

// Detector-threshold handling during the search. kFixed keeps the template
// gamma; kHdTargetPf re-derives gamma per candidate t_s0 so the quiet-stage
// false alarm equals target_pf.
struct GammaSearchPolicy {
  enum class Kind { kFixed, kHdTargetPf };
  Kind kind = Kind::kFixed;
  double target_pf = 0.1;
};

struct SearchSpace {
  std::vector<double> t_s0_grid;  // strictly increasing, positive
  std::vector<double> t_grid;
  TsiPolicy tsi_policy;
  BSumMode b_sum = BSumMode::kLiteral;
  GammaSearchPolicy gamma_policy;
  int refinement = 0;  // zoom-in passes around the incumbent

  void validate() const;
};

struct Optimum {
  double t_s0_star = 0;
  double t_star = 0;
  double rate_star = 0;
  double collision_at_opt = 1;
  bool feasible = false;
};

// Brute-force maximization of the TS throughput over (t_s0, t) subject to
// collision <= constraint.
Optimum solve_p1(const TrafficModel& model, const SensingConfig& sense,
                 const LinkModel& link, const SearchSpace& space,
                 double constraint);

// Same for the TR throughput with equal transmit/receive durations.
Optimum solve_p2(const TrafficModel& model, const SensingConfig& sense,
                 const LinkModel& link, const SearchSpace& space,
                 double constraint);

struct StrategyDecision {
  enum class Action { kTransmitSense = 0, kTransmitReceive = 1 };
  Action action = Action::kTransmitSense;  // ties and joint infeasibility -> TS
  double rate_ts = 0;
  double rate_tr = 0;
  double beta = 0;
  Optimum ts_optimum;
  Optimum tr_optimum;
};

// Solves both problems and picks the action with the higher constrained
// throughput (infeasible counts as zero; ties go to TS).
StrategyDecision solve_p3(const TrafficModel& model, const SensingConfig& sense,
                          const LinkModel& link, const SearchSpace& space,
                          double constraint);

struct BetaStarResult {
  double beta_star = 1;        // smallest beta where TS >= TR, else grid back
  bool crossing_found = false;
  std::vector<double> crossings;  // grid values right after each sign change
  std::vector<StrategyDecision> sweep;
};

// Sweeps the load over beta_grid, re-optimizing both modes at each point,
// and locates where the preferred action switches.
BetaStarResult find_beta_star(const TrafficModel& model_template,
                              const SensingConfig& sense, const LinkModel& link,
                              const SearchSpace& space, double constraint,
                              const std::vector<double>& beta_grid);

}  // namespace fdcr
