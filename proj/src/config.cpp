#include "fdcr/config.hpp"

#include <cmath>
#include <fstream>

#include "fdcr/errors.hpp"
#include "fdcr/units.hpp"

namespace fdcr {

using nlohmann::json;

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kSenseCurves: return "sense-curves";
    case Experiment::kCollisionCurves: return "collision-curves";
    case Experiment::kThroughputCurves: return "throughput-curves";
    case Experiment::kOptimizeP1: return "optimize-p1";
    case Experiment::kOptimizeP2: return "optimize-p2";
    case Experiment::kStrategySweep: return "strategy-sweep";
    case Experiment::kSimulate: return "simulate";
  }
  return "?";
}

std::string mode_name(SuMode m) {
  switch (m) {
    case SuMode::kTransmitOnly: return "TO";
    case SuMode::kTransmitSense: return "TS";
    case SuMode::kTransmitReceive: return "TR";
  }
  return "?";
}

std::vector<double> GridSpec::values() const {
  if (points < 1) throw ConfigError("grid: points must be at least 1");
  if (!(max >= min)) throw ConfigError("grid: max must be at least min");
  std::vector<double> v;
  v.reserve(points);
  if (points == 1) {
    v.push_back(min);
    return v;
  }
  if (scale == Scale::kLog) {
    if (!(min > 0.0)) throw ConfigError("grid: log scale needs positive min");
    const double ratio = std::log(max / min);
    for (int k = 0; k < points; ++k) {
      v.push_back(min * std::exp(ratio * k / (points - 1)));
    }
  } else {
    for (int k = 0; k < points; ++k) {
      v.push_back(min + (max - min) * k / (points - 1));
    }
  }
  v.back() = max;
  return v;
}

FrameSchedule ScheduleSpec::build_for_mode(SuMode which, double at_t_s0,
                                           double at_t) const {
  switch (which) {
    case SuMode::kTransmitOnly:
      return FrameSchedule::transmit_only(at_t_s0, at_t);
    case SuMode::kTransmitSense:
      if (tsi_equal) {
        return FrameSchedule::transmit_sense_equal_windows(at_t_s0, at_t, m,
                                                           b_sum);
      }
      return FrameSchedule::transmit_sense(at_t_s0, at_t, m, t_si, b_sum);
    case SuMode::kTransmitReceive:
      return FrameSchedule::transmit_receive(at_t_s0, at_t,
                                             t_r < 0.0 ? at_t : t_r);
  }
  throw ConfigError("schedule: unknown mode");
}

TsiPolicy ScheduleSpec::tsi_policy() const {
  return tsi_equal ? TsiPolicy::equal_windows(m) : TsiPolicy::fixed(m, t_si);
}

SearchSpace OptimizeSpec::search_space(const ScheduleSpec& sched) const {
  SearchSpace space;
  space.t_s0_grid = t_s0_grid.values();
  space.t_grid = t_grid.values();
  space.tsi_policy = sched.tsi_policy();
  space.b_sum = sched.b_sum;
  space.gamma_policy = gamma_policy;
  space.refinement = refinement;
  return space;
}

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

const json& require(const json& obj, const std::string& where,
                    const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(where + ": missing required key '" + std::string(key) +
                      "'");
  }
  return *it;
}

std::string require_string(const json& obj, const std::string& where,
                           const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_string()) {
    throw ConfigError(where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

double require_number(const json& obj, const std::string& where,
                      const char* key) {
  const json& v = require(obj, where, key);
  if (!v.is_number()) {
    throw ConfigError(where + "." + key +
                      ": expected a plain number (dimensionless)");
  }
  return v.get<double>();
}

long long optional_integer(const json& obj, const std::string& where,
                           const char* key, long long fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ConfigError(where + "." + key + ": expected an integer");
  }
  return it->get<long long>();
}

double quantity(const json& obj, const std::string& where, const char* key,
                double (*parser)(const std::string&, const std::string&)) {
  const json& v = require(obj, where, key);
  if (v.is_number()) {
    throw ConfigError(where + "." + key +
                      ": bare number; a unit suffix is required");
  }
  if (!v.is_string()) {
    throw ConfigError(where + "." + key + ": expected a quantity string");
  }
  return parser(v.get<std::string>(), where + "." + key);
}

SuMode parse_mode(const std::string& s, const std::string& where) {
  if (s == "TO") return SuMode::kTransmitOnly;
  if (s == "TS") return SuMode::kTransmitSense;
  if (s == "TR") return SuMode::kTransmitReceive;
  throw ConfigError(where + ": unknown mode '" + s + "' (TO, TS, TR)");
}

SensingConfig parse_sensing(const json& obj) {
  const std::string where = "sensing";
  check_keys(obj, where,
             {"chi", "alpha_s", "alpha_l", "sigma_w2", "gamma", "f_s"});
  const double chi = require_number(obj, where, "chi");
  const double alpha_s = quantity(obj, where, "alpha_s", parse_ratio_linear);
  const double alpha_l = quantity(obj, where, "alpha_l", parse_ratio_linear);
  const double sigma_w2 = quantity(obj, where, "sigma_w2", parse_power);
  const double gamma = quantity(obj, where, "gamma", parse_power);
  const double f_s = quantity(obj, where, "f_s", parse_frequency_hz);
  try {
    return SensingConfig(chi, alpha_s, alpha_l, sigma_w2, gamma, f_s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

TrafficModel parse_traffic(const json& obj) {
  const std::string where = "traffic";
  check_keys(obj, where, {"lambda_off", "beta"});
  const double lambda_off = quantity(obj, where, "lambda_off", parse_rate_per_s);
  const double beta = require_number(obj, where, "beta");
  try {
    return TrafficModel(lambda_off, beta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

LinkModel parse_link(const json& obj) {
  const std::string where = "link";
  check_keys(obj, where, {"p_i", "p_j", "d_ij", "d_ji", "c", "eta", "sigma_i2",
                          "sigma_j2", "chi_i", "chi_j"});
  try {
    return LinkModel(quantity(obj, where, "p_i", parse_power),
                     quantity(obj, where, "p_j", parse_power),
                     quantity(obj, where, "d_ij", parse_distance_m),
                     quantity(obj, where, "d_ji", parse_distance_m),
                     require_number(obj, where, "c"),
                     require_number(obj, where, "eta"),
                     quantity(obj, where, "sigma_i2", parse_power),
                     quantity(obj, where, "sigma_j2", parse_power),
                     require_number(obj, where, "chi_i"),
                     require_number(obj, where, "chi_j"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ScheduleSpec parse_schedule(const json& obj) {
  const std::string where = "schedule";
  check_keys(obj, where, {"mode", "t_s0", "t", "t_r", "m", "t_si", "b_sum"});
  ScheduleSpec s;
  s.mode = parse_mode(require_string(obj, where, "mode"), where + ".mode");
  s.t_s0 = quantity(obj, where, "t_s0", parse_duration_s);
  s.t = quantity(obj, where, "t", parse_duration_s);
  if (obj.contains("t_r")) {
    s.t_r = quantity(obj, where, "t_r", parse_duration_s);
  }
  s.m = optional_integer(obj, where, "m", 0);
  if (obj.contains("t_si")) {
    const json& v = obj.at("t_si");
    if (v.is_string() && v.get<std::string>() == "equal") {
      s.tsi_equal = true;
    } else {
      s.tsi_equal = false;
      s.t_si = quantity(obj, where, "t_si", parse_duration_s);
    }
  }
  if (obj.contains("b_sum")) {
    const std::string b = require_string(obj, where, "b_sum");
    if (b == "literal") {
      s.b_sum = BSumMode::kLiteral;
    } else if (b == "partition") {
      s.b_sum = BSumMode::kPartition;
    } else {
      throw ConfigError(where + ".b_sum: expected 'literal' or 'partition'");
    }
  }
  // Surface layout errors at parse time.
  s.build();
  return s;
}

GridSpec parse_grid(const json& obj, const std::string& where,
                    double (*parser)(const std::string&, const std::string&)) {
  check_keys(obj, where, {"scale", "min", "max", "points"});
  GridSpec g;
  const std::string scale = require_string(obj, where, "scale");
  if (scale == "log") {
    g.scale = GridSpec::Scale::kLog;
  } else if (scale == "linear") {
    g.scale = GridSpec::Scale::kLinear;
  } else {
    throw ConfigError(where + ".scale: expected 'log' or 'linear'");
  }
  if (parser) {
    g.min = quantity(obj, where, "min", parser);
    g.max = quantity(obj, where, "max", parser);
  } else {
    g.min = require_number(obj, where, "min");
    g.max = require_number(obj, where, "max");
  }
  g.points = static_cast<int>(optional_integer(obj, where, "points", 0));
  if (g.points < 1) throw ConfigError(where + ".points: must be at least 1");
  g.values();  // validates the range
  return g;
}

CurveGammaPolicy parse_curve_gamma(const json& obj, const std::string& where) {
  check_keys(obj, where, {"type", "offset"});
  CurveGammaPolicy p;
  const std::string type = require_string(obj, where, "type");
  if (type == "fixed") {
    p.kind = CurveGammaPolicy::Kind::kFixed;
  } else if (type == "h0-offset") {
    p.kind = CurveGammaPolicy::Kind::kH0Offset;
    p.offset = require_number(obj, where, "offset");
    if (!(p.offset > 0.0)) {
      throw ConfigError(where + ".offset: must be positive");
    }
  } else {
    throw ConfigError(where + ".type: expected 'fixed' or 'h0-offset'");
  }
  return p;
}

SweepSpec parse_sweep(const json& obj, Experiment experiment) {
  const std::string where = "sweep";
  check_keys(obj, where,
             {"axis", "grid", "chi_values", "modes", "quality", "gamma_policy"});
  SweepSpec s;
  s.axis = require_string(obj, where, "axis");
  const bool duration_axis =
      s.axis == "t_s" || s.axis == "t" || s.axis == "t_s0";
  if (!duration_axis && s.axis != "chi") {
    throw ConfigError(where + ".axis: expected t_s, t, t_s0 or chi");
  }
  s.grid = parse_grid(require(obj, where, "grid"), where + ".grid",
                      duration_axis ? parse_duration_s : nullptr);
  if (obj.contains("chi_values")) {
    for (const auto& v : obj.at("chi_values")) {
      if (!v.is_number()) {
        throw ConfigError(where + ".chi_values: expected numbers");
      }
      s.chi_values.push_back(v.get<double>());
    }
  }
  if (obj.contains("modes")) {
    for (const auto& v : obj.at("modes")) {
      s.modes.push_back(parse_mode(v.get<std::string>(), where + ".modes"));
    }
  }
  if (obj.contains("quality")) {
    const std::string q = require_string(obj, where, "quality");
    if (q == "perfect") {
      s.quality = SensingQuality::kPerfect;
    } else if (q == "imperfect") {
      s.quality = SensingQuality::kImperfect;
    } else {
      throw ConfigError(where + ".quality: expected 'perfect' or 'imperfect'");
    }
  }
  if (obj.contains("gamma_policy")) {
    s.gamma_policy =
        parse_curve_gamma(obj.at("gamma_policy"), where + ".gamma_policy");
  }
  if (experiment == Experiment::kSenseCurves && s.chi_values.empty()) {
    throw ConfigError(where + ".chi_values: required for sense-curves");
  }
  if ((experiment == Experiment::kCollisionCurves ||
       experiment == Experiment::kThroughputCurves) &&
      s.modes.empty()) {
    throw ConfigError(where + ".modes: required for this experiment");
  }
  return s;
}

OptimizeSpec parse_optimize(const json& obj) {
  const std::string where = "optimize";
  check_keys(obj, where,
             {"constraint", "t_s0_grid", "t_grid", "refinement", "gamma_policy"});
  OptimizeSpec s;
  s.constraint = require_number(obj, where, "constraint");
  if (!(s.constraint > 0.0 && s.constraint <= 1.0)) {
    throw ConfigError(where + ".constraint: must be in (0, 1]");
  }
  s.t_s0_grid = parse_grid(require(obj, where, "t_s0_grid"),
                           where + ".t_s0_grid", parse_duration_s);
  s.t_grid =
      parse_grid(require(obj, where, "t_grid"), where + ".t_grid",
                 parse_duration_s);
  s.refinement =
      static_cast<int>(optional_integer(obj, where, "refinement", 0));
  if (obj.contains("gamma_policy")) {
    const json& gp = obj.at("gamma_policy");
    if (gp.is_string() && gp.get<std::string>() == "fixed") {
      s.gamma_policy.kind = GammaSearchPolicy::Kind::kFixed;
    } else if (gp.is_object()) {
      check_keys(gp, where + ".gamma_policy", {"hd_target_pf"});
      s.gamma_policy.kind = GammaSearchPolicy::Kind::kHdTargetPf;
      s.gamma_policy.target_pf =
          require_number(gp, where + ".gamma_policy", "hd_target_pf");
      if (!(s.gamma_policy.target_pf > 0.0 && s.gamma_policy.target_pf < 1.0)) {
        throw ConfigError(where + ".gamma_policy.hd_target_pf: not in (0, 1)");
      }
    } else {
      throw ConfigError(where +
                        ".gamma_policy: expected 'fixed' or {hd_target_pf}");
    }
  }
  return s;
}

StrategySpec parse_strategy(const json& obj) {
  const std::string where = "strategy";
  check_keys(obj, where,
             {"beta_grid", "on_model_sensitivity", "sensitivity_frames"});
  StrategySpec s;
  s.beta_grid =
      parse_grid(require(obj, where, "beta_grid"), where + ".beta_grid",
                 nullptr);
  if (obj.contains("on_model_sensitivity")) {
    const json& v = obj.at("on_model_sensitivity");
    if (!v.is_boolean()) {
      throw ConfigError(where + ".on_model_sensitivity: expected a boolean");
    }
    s.on_model_sensitivity = v.get<bool>();
  }
  s.sensitivity_frames =
      optional_integer(obj, where, "sensitivity_frames", 20000);
  if (s.sensitivity_frames < 1) {
    throw ConfigError(where + ".sensitivity_frames: must be positive");
  }
  return s;
}

SimulateSpec parse_simulate(const json& obj) {
  const std::string where = "simulate";
  check_keys(obj, where, {"target", "trials", "frames", "hypothesis", "duplex",
                          "detector", "on_model", "t_s"});
  SimulateSpec s;
  const std::string target = require_string(obj, where, "target");
  if (target == "detector") {
    s.target = SimulateSpec::Target::kDetector;
  } else if (target == "system") {
    s.target = SimulateSpec::Target::kSystem;
  } else {
    throw ConfigError(where + ".target: expected 'detector' or 'system'");
  }
  s.trials = optional_integer(obj, where, "trials", 100000);
  s.frames = optional_integer(obj, where, "frames", 100000);
  if (s.trials < 1 || s.frames < 1) {
    throw ConfigError(where + ": trials/frames must be positive");
  }
  if (obj.contains("hypothesis")) {
    const std::string h = require_string(obj, where, "hypothesis");
    if (h == "H0") {
      s.hypothesis = Hypothesis::kIdle;
    } else if (h == "H1") {
      s.hypothesis = Hypothesis::kBusy;
    } else {
      throw ConfigError(where + ".hypothesis: expected 'H0' or 'H1'");
    }
  }
  if (obj.contains("duplex")) {
    const std::string d = require_string(obj, where, "duplex");
    if (d == "HD") {
      s.duplex = Duplex::kHalf;
    } else if (d == "FD") {
      s.duplex = Duplex::kFull;
    } else {
      throw ConfigError(where + ".duplex: expected 'HD' or 'FD'");
    }
  }
  if (obj.contains("detector")) {
    const std::string d = require_string(obj, where, "detector");
    if (d == "analytic") {
      s.detector = DetectorDraw::kAnalytic;
    } else if (d == "sampled") {
      s.detector = DetectorDraw::kSampled;
    } else {
      throw ConfigError(where + ".detector: expected 'analytic' or 'sampled'");
    }
  }
  if (obj.contains("on_model")) {
    const std::string o = require_string(obj, where, "on_model");
    if (o == "exponential") {
      s.on_model = OnModel::kExponential;
    } else if (o == "deterministic") {
      s.on_model = OnModel::kDeterministic;
    } else if (o == "erlang2") {
      s.on_model = OnModel::kErlang2;
    } else {
      throw ConfigError(where + ".on_model: unknown model '" + o + "'");
    }
  }
  if (s.target == SimulateSpec::Target::kDetector) {
    s.t_s = quantity(obj, where, "t_s", parse_duration_s);
  }
  return s;
}

Experiment parse_experiment_name(const std::string& name) {
  for (Experiment e :
       {Experiment::kSenseCurves, Experiment::kCollisionCurves,
        Experiment::kThroughputCurves, Experiment::kOptimizeP1,
        Experiment::kOptimizeP2, Experiment::kStrategySweep,
        Experiment::kSimulate}) {
    if (experiment_name(e) == name) return e;
  }
  throw ConfigError("experiment: unknown experiment '" + name + "'");
}

std::string default_output(Experiment e) {
  std::string name = experiment_name(e);
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name + ".csv";
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(doc, "config",
             {"experiment", "seed", "output", "preset", "sensing", "traffic",
              "link", "schedule", "sweep", "optimize", "strategy", "simulate"});

  ExperimentConfig cfg;
  cfg.experiment =
      parse_experiment_name(require_string(doc, "config", "experiment"));
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned() &&
        !doc.at("seed").is_number_integer()) {
      throw ConfigError("config.seed: expected an integer");
    }
    cfg.seed = doc.at("seed").get<uint64_t>();
  }
  cfg.output = doc.value("output", default_output(cfg.experiment));

  if (doc.contains("sensing")) cfg.sensing = parse_sensing(doc.at("sensing"));
  if (doc.contains("traffic")) cfg.traffic = parse_traffic(doc.at("traffic"));
  if (doc.contains("link")) cfg.link = parse_link(doc.at("link"));
  if (doc.contains("schedule"))
    cfg.schedule = parse_schedule(doc.at("schedule"));
  if (doc.contains("sweep"))
    cfg.sweep = parse_sweep(doc.at("sweep"), cfg.experiment);
  if (doc.contains("optimize"))
    cfg.optimize = parse_optimize(doc.at("optimize"));
  if (doc.contains("strategy"))
    cfg.strategy = parse_strategy(doc.at("strategy"));
  if (doc.contains("simulate"))
    cfg.simulate = parse_simulate(doc.at("simulate"));

  auto need = [&](bool present, const char* block) {
    if (!present) {
      throw ConfigError("config: experiment '" +
                        experiment_name(cfg.experiment) +
                        "' requires the '" + block + "' block");
    }
  };
  switch (cfg.experiment) {
    case Experiment::kSenseCurves:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.sweep.has_value(), "sweep");
      break;
    case Experiment::kCollisionCurves:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.traffic.has_value(), "traffic");
      need(cfg.schedule.has_value(), "schedule");
      need(cfg.sweep.has_value(), "sweep");
      break;
    case Experiment::kThroughputCurves:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.traffic.has_value(), "traffic");
      need(cfg.link.has_value(), "link");
      need(cfg.schedule.has_value(), "schedule");
      need(cfg.sweep.has_value(), "sweep");
      break;
    case Experiment::kOptimizeP1:
    case Experiment::kOptimizeP2:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.traffic.has_value(), "traffic");
      need(cfg.link.has_value(), "link");
      need(cfg.schedule.has_value(), "schedule");
      need(cfg.optimize.has_value(), "optimize");
      break;
    case Experiment::kStrategySweep:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.traffic.has_value(), "traffic");
      need(cfg.link.has_value(), "link");
      need(cfg.schedule.has_value(), "schedule");
      need(cfg.optimize.has_value(), "optimize");
      need(cfg.strategy.has_value(), "strategy");
      break;
    case Experiment::kSimulate:
      need(cfg.sensing.has_value(), "sensing");
      need(cfg.simulate.has_value(), "simulate");
      if (cfg.simulate->target == SimulateSpec::Target::kSystem) {
        need(cfg.traffic.has_value(), "traffic");
        need(cfg.link.has_value(), "link");
        need(cfg.schedule.has_value(), "schedule");
      }
      break;
  }

  cfg.resolved = doc;
  return cfg;
}

json merge_config(json base, const json& overlay) {
  if (!base.is_object() || !overlay.is_object()) return overlay;
  for (const auto& [key, value] : overlay.items()) {
    if (base.contains(key) && base.at(key).is_object() && value.is_object()) {
      base[key] = merge_config(base.at(key), value);
    } else {
      base[key] = value;
    }
  }
  return base;
}

json preset_json(const std::string& name) {
  if (name != "section-6-defaults") {
    throw ConfigError("preset: unknown preset '" + name + "'");
  }
  // Baseline numeric setup: 6 MHz sampling, 20 dB self-SNR, -15 dB PU SNR,
  // lambda_off = 0.01/s, beta = 0.5, eta = 4, m = 500 windows, 15 dB one-way
  // link SNR, collision budget 0.04. The link is normalized so the residual
  // self-interference at a node's own receiver equals chi^2 times the same
  // 20 dB self-signal the detector sees. Search ranges bracket the operating
  // points of interest.
  return json::parse(R"JSON({
    "seed": 42,
    "sensing": {
      "chi": 0.235,
      "alpha_s": "20 dB",
      "alpha_l": "-15 dB",
      "sigma_w2": "1 linear",
      "gamma": "1.0218 linear",
      "f_s": "6 MHz"
    },
    "traffic": { "lambda_off": "0.01 /s", "beta": 0.5 },
    "link": {
      "p_i": "100 linear",
      "p_j": "100 linear",
      "d_ij": "1.1547819846894583 m",
      "d_ji": "1.1547819846894583 m",
      "c": 1.0,
      "eta": 4.0,
      "sigma_i2": "1 linear",
      "sigma_j2": "1 linear",
      "chi_i": 0.235,
      "chi_j": 0.235
    },
    "schedule": {
      "mode": "TS",
      "t_s0": "4 ms",
      "t": "1 s",
      "m": 500,
      "t_si": "equal",
      "b_sum": "literal"
    },
    "sweep": {
      "axis": "t_s",
      "grid": { "scale": "log", "min": "0.01 ms", "max": "5 ms", "points": 50 },
      "chi_values": [0.0, 0.1, 0.2, 0.3],
      "gamma_policy": { "type": "h0-offset", "offset": 0.015 }
    },
    "optimize": {
      "constraint": 0.04,
      "t_s0_grid": { "scale": "log", "min": "0.5 ms", "max": "6.5 ms", "points": 40 },
      "t_grid": { "scale": "log", "min": "20 ms", "max": "1.4 s", "points": 40 },
      "refinement": 2,
      "gamma_policy": "fixed"
    },
    "strategy": {
      "beta_grid": { "scale": "linear", "min": 0.05, "max": 0.95, "points": 25 },
      "on_model_sensitivity": false,
      "sensitivity_frames": 20000
    }
  })JSON");
}

ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  const std::string& preset_override,
                                  std::optional<uint64_t> seed_override) {
  json doc;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config: " + path.string() + " is not valid JSON: " +
                        e.what());
    }
  } else {
    doc = json::object();
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

  std::string preset = preset_override;
  if (preset.empty() && doc.contains("preset")) {
    preset = doc.at("preset").get<std::string>();
  }
  json merged = doc;
  if (!preset.empty()) {
    merged = merge_config(preset_json(preset), doc);
    merged["preset"] = preset;
  }
  if (seed_override) merged["seed"] = *seed_override;
  return parse_config(merged);
}

json validation_json(const ExperimentConfig& cfg) {
  json out;
  out["experiment"] = experiment_name(cfg.experiment);
  out["seed"] = cfg.seed;
  out["output"] = cfg.output;
  out["errors"] = json::array();

  if (cfg.sensing) {
    const auto& s = *cfg.sensing;
    out["sensing"] = {
        {"chi", s.chi},
        {"alpha_s_linear", s.alpha_s},
        {"alpha_s_db", linear_to_db(s.alpha_s)},
        {"alpha_l_linear", s.alpha_l},
        {"alpha_l_db", linear_to_db(s.alpha_l)},
        {"sigma_w2", s.sigma_w2},
        {"gamma", s.gamma},
        {"gamma_over_sigma_w2", s.gamma / s.sigma_w2},
        {"f_s_hz", s.f_s},
    };
  }
  if (cfg.traffic) {
    out["traffic"] = {
        {"lambda_off_per_s", cfg.traffic->lambda_off},
        {"beta", cfg.traffic->beta},
        {"lambda_on_per_s", on_rate(*cfg.traffic)},
        {"mean_off_s", 1.0 / cfg.traffic->lambda_off},
        {"mean_on_s", 1.0 / on_rate(*cfg.traffic)},
    };
  }
  if (cfg.link) {
    out["link"] = {
        {"snr_to_linear", snr_to(*cfg.link)},
        {"snr_to_db", linear_to_db(snr_to(*cfg.link))},
        {"snr_tr_at_j_linear", snr_tr(*cfg.link, TrNode::kNodeJ)},
        {"snr_tr_at_i_linear", snr_tr(*cfg.link, TrNode::kNodeI)},
        {"gain_ij", channel_gain(*cfg.link, Direction::kForward)},
        {"gain_ji", channel_gain(*cfg.link, Direction::kReverse)},
    };
  }
  if (cfg.schedule && cfg.sensing) {
    const FrameSchedule sched = cfg.schedule->build();
    json sj = {
        {"mode", mode_name(sched.mode)},
        {"t_s0_s", sched.t_s0},
        {"t_s", sched.t},
        {"n_initial",
         SampleCount::from_duration(sched.t_s0, cfg.sensing->f_s).n},
    };
    if (sched.mode == SuMode::kTransmitSense) {
      sj["m"] = sched.m;
      sj["t_si_s"] = sched.t_si;
      sj["n_window"] =
          SampleCount::from_duration(sched.t_si, cfg.sensing->f_s).n;
      sj["b_sum"] =
          sched.b_sum == BSumMode::kLiteral ? "literal" : "partition";
    }
    if (sched.mode == SuMode::kTransmitReceive) sj["t_r_s"] = sched.t_r;
    out["schedule"] = sj;
  }
  return out;
}

}  // namespace fdcr
