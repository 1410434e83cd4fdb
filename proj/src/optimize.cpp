#include "fdcr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fdcr/errors.hpp"

namespace fdcr {

TsiPolicy TsiPolicy::equal_windows(long long m) {
  TsiPolicy p;
  p.kind = Kind::kEqualWindows;
  p.m = m;
  return p;
}

TsiPolicy TsiPolicy::fixed(long long m, double t_si) {
  TsiPolicy p;
  p.kind = Kind::kFixed;
  p.m = m;
  p.t_si = t_si;
  return p;
}

void SearchSpace::validate() const {
  auto check_grid = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw ConfigError(std::string(name) + ": empty grid");
    double prev = 0.0;
    for (double v : g) {
      if (!(v > prev))
        throw ConfigError(std::string(name) +
                          ": grid must be positive and strictly increasing");
      prev = v;
    }
  };
  check_grid(t_s0_grid, "t_s0_grid");
  check_grid(t_grid, "t_grid");
  if (tsi_policy.kind == TsiPolicy::Kind::kFixed && !(tsi_policy.t_si > 0.0))
    throw ConfigError("tsi_policy: fixed t_si must be positive");
  if (tsi_policy.m < 0) throw ConfigError("tsi_policy: m must be nonnegative");
  if (refinement < 0) throw ConfigError("refinement must be nonnegative");
}

namespace {

struct EvalOutcome {
  double rate = 0.0;
  double collision = 1.0;
  bool defined = false;  // false when the candidate cannot be evaluated
};

using Evaluator = std::function<EvalOutcome(double t_s0, double t)>;

struct BestPoint {
  double t_s0 = 0.0;
  double t = 0.0;
  double rate = -1.0;
  double collision = 1.0;
  bool found = false;
};

// One full scan over the cross product, in fixed index order so that ties
// resolve to the earliest grid point.
void scan(const std::vector<double>& t_s0_grid, const std::vector<double>& t_grid,
          double constraint, const Evaluator& eval, BestPoint& best_feasible,
          BestPoint& least_collision, long long* best_i, long long* best_j) {
  for (size_t i = 0; i < t_s0_grid.size(); ++i) {
    for (size_t j = 0; j < t_grid.size(); ++j) {
      const EvalOutcome out = eval(t_s0_grid[i], t_grid[j]);
      if (!out.defined) continue;
      if (!least_collision.found || out.collision < least_collision.collision) {
        least_collision = {t_s0_grid[i], t_grid[j], out.rate, out.collision,
                           true};
      }
      if (out.collision <= constraint + 1e-12 &&
          (!best_feasible.found || out.rate > best_feasible.rate)) {
        best_feasible = {t_s0_grid[i], t_grid[j], out.rate, out.collision,
                         true};
        if (best_i) *best_i = static_cast<long long>(i);
        if (best_j) *best_j = static_cast<long long>(j);
      }
    }
  }
}

std::vector<double> zoom_grid(const std::vector<double>& coarse, long long idx,
                              int points) {
  const size_t i = static_cast<size_t>(idx);
  const double lo = coarse[i == 0 ? 0 : i - 1];
  const double hi = coarse[std::min(i + 1, coarse.size() - 1)];
  std::vector<double> g;
  if (!(hi > lo)) {
    g.push_back(coarse[i]);
    return g;
  }
  g.reserve(points);
  for (int k = 0; k < points; ++k) {
    g.push_back(lo + (hi - lo) * k / (points - 1));
  }
  return g;
}

Optimum grid_search(const SearchSpace& space, double constraint,
                    const Evaluator& eval) {
  space.validate();
  if (!(constraint > 0.0 && constraint <= 1.0)) {
    throw std::invalid_argument("grid_search: constraint must be in (0, 1]");
  }

  BestPoint best, least;
  long long bi = -1, bj = -1;
  scan(space.t_s0_grid, space.t_grid, constraint, eval, best, least, &bi, &bj);

  if (best.found) {
    std::vector<double> g0 = space.t_s0_grid;
    std::vector<double> g1 = space.t_grid;
    long long i = bi, j = bj;
    for (int pass = 0; pass < space.refinement; ++pass) {
      g0 = zoom_grid(g0, i, 21);
      g1 = zoom_grid(g1, j, 21);
      BestPoint local;
      long long li = -1, lj = -1;
      scan(g0, g1, constraint, eval, local, least, &li, &lj);
      if (!local.found) break;
      if (local.rate > best.rate) best = local;
      i = li;
      j = lj;
    }
    return Optimum{best.t_s0, best.t, best.rate, best.collision, true};
  }

  Optimum infeasible;
  infeasible.feasible = false;
  infeasible.rate_star = 0.0;
  if (least.found) {
    infeasible.t_s0_star = least.t_s0;
    infeasible.t_star = least.t;
    infeasible.collision_at_opt = least.collision;
  }
  return infeasible;
}

SensingConfig apply_gamma_policy(const SensingConfig& sense,
                                 const GammaSearchPolicy& policy,
                                 double t_s0) {
  if (policy.kind == GammaSearchPolicy::Kind::kFixed) return sense;
  return sense.with_gamma(
      threshold_for_pf(sense, t_s0, policy.target_pf, Duplex::kHalf));
}

FrameSchedule ts_schedule(const SearchSpace& space, double t_s0, double t) {
  if (space.tsi_policy.kind == TsiPolicy::Kind::kEqualWindows) {
    return FrameSchedule::transmit_sense_equal_windows(t_s0, t,
                                                       space.tsi_policy.m,
                                                       space.b_sum);
  }
  return FrameSchedule::transmit_sense(t_s0, t, space.tsi_policy.m,
                                       space.tsi_policy.t_si, space.b_sum);
}

}  // namespace

Optimum solve_p1(const TrafficModel& model, const SensingConfig& sense,
                 const LinkModel& link, const SearchSpace& space,
                 double constraint) {
  Evaluator eval = [&](double t_s0, double t) -> EvalOutcome {
    try {
      const SensingConfig cfg = apply_gamma_policy(sense, space.gamma_policy,
                                                   t_s0);
      const FrameSchedule sched = ts_schedule(space, t_s0, t);
      const CollisionBreakdown cb = collision_ts_imperfect(model, sched, cfg);
      const ThroughputReport r = rate_ts(link, sched, cb);
      return EvalOutcome{r.value, cb.total, true};
    } catch (const InfeasibleError&) {
      return EvalOutcome{};
    } catch (const ConfigError&) {
      return EvalOutcome{};
    }
  };
  return grid_search(space, constraint, eval);
}

Optimum solve_p2(const TrafficModel& model, const SensingConfig& sense,
                 const LinkModel& link, const SearchSpace& space,
                 double constraint) {
  Evaluator eval = [&](double t_s0, double t) -> EvalOutcome {
    try {
      const SensingConfig cfg = apply_gamma_policy(sense, space.gamma_policy,
                                                   t_s0);
      const FrameSchedule sched = FrameSchedule::transmit_receive(t_s0, t, t);
      const CollisionBreakdown cb = collision_to_imperfect(model, sched, cfg);
      const ThroughputReport r = rate_tr(link, sched, cb.total);
      return EvalOutcome{r.value, cb.total, true};
    } catch (const InfeasibleError&) {
      return EvalOutcome{};
    } catch (const ConfigError&) {
      return EvalOutcome{};
    }
  };
  return grid_search(space, constraint, eval);
}

StrategyDecision solve_p3(const TrafficModel& model, const SensingConfig& sense,
                          const LinkModel& link, const SearchSpace& space,
                          double constraint) {
  StrategyDecision d;
  d.beta = model.beta;
  d.ts_optimum = solve_p1(model, sense, link, space, constraint);
  d.tr_optimum = solve_p2(model, sense, link, space, constraint);
  d.rate_ts = d.ts_optimum.feasible ? d.ts_optimum.rate_star : 0.0;
  d.rate_tr = d.tr_optimum.feasible ? d.tr_optimum.rate_star : 0.0;
  const bool tr_wins = d.tr_optimum.feasible &&
                       (!d.ts_optimum.feasible || d.rate_tr > d.rate_ts);
  d.action = tr_wins ? StrategyDecision::Action::kTransmitReceive
                     : StrategyDecision::Action::kTransmitSense;
  return d;
}

BetaStarResult find_beta_star(const TrafficModel& model_template,
                              const SensingConfig& sense, const LinkModel& link,
                              const SearchSpace& space, double constraint,
                              const std::vector<double>& beta_grid) {
  if (beta_grid.empty()) {
    throw std::invalid_argument("find_beta_star: empty beta grid");
  }
  double prev = 0.0;
  for (double b : beta_grid) {
    if (!(b > prev && b < 1.0)) {
      throw std::invalid_argument(
          "find_beta_star: beta grid must be strictly increasing in (0, 1)");
    }
    prev = b;
  }

  BetaStarResult result;
  result.sweep.reserve(beta_grid.size());
  int prev_sign = 0;
  bool ts_seen = false;
  for (double beta : beta_grid) {
    const TrafficModel model(model_template.lambda_off, beta);
    StrategyDecision d = solve_p3(model, sense, link, space, constraint);
    const int sign =
        d.action == StrategyDecision::Action::kTransmitReceive ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) {
      result.crossings.push_back(beta);
    }
    if (!ts_seen && sign < 0) {
      result.beta_star = beta;
      ts_seen = true;
    }
    prev_sign = sign;
    result.sweep.push_back(std::move(d));
  }
  result.crossing_found = !result.crossings.empty();
  if (!ts_seen) result.beta_star = beta_grid.back();
  return result;
}

}  // namespace fdcr
