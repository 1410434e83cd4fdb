#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdcr/optimize.hpp"
#include "fdcr/sim.hpp"

namespace fdcr {

enum class Experiment {
  kSenseCurves,
  kCollisionCurves,
  kThroughputCurves,
  kOptimizeP1,
  kOptimizeP2,
  kStrategySweep,
  kSimulate,
};

std::string experiment_name(Experiment e);
std::string mode_name(SuMode m);

struct GridSpec {
  enum class Scale { kLog, kLinear };
  Scale scale = Scale::kLog;
  double min = 0;
  double max = 0;
  int points = 0;

  std::vector<double> values() const;
};

// Threshold selection for curve sweeps. kH0Offset places gamma a fixed
// margin above the idle-hypothesis mean energy of each curve's chi, which
// keeps every curve's probabilities in a comparable range.
struct CurveGammaPolicy {
  enum class Kind { kFixed, kH0Offset };
  Kind kind = Kind::kFixed;
  double offset = 0.0;  // in units of sigma_w2
};

// Frame layout as configured; concrete FrameSchedules are built per sweep
// point / search candidate.
struct ScheduleSpec {
  SuMode mode = SuMode::kTransmitOnly;
  double t_s0 = 0;
  double t = 0;
  double t_r = -1;  // < 0: mirror t
  long long m = 0;
  bool tsi_equal = true;
  double t_si = 0;
  BSumMode b_sum = BSumMode::kLiteral;

  FrameSchedule build() const { return build_for_mode(mode, t_s0, t); }
  FrameSchedule build_for_mode(SuMode mode, double t_s0, double t) const;
  TsiPolicy tsi_policy() const;
};

struct SweepSpec {
  std::string axis;  // t_s | t | t_s0 | chi
  GridSpec grid;
  std::vector<double> chi_values;
  std::vector<SuMode> modes;
  SensingQuality quality = SensingQuality::kImperfect;
  CurveGammaPolicy gamma_policy;
};

struct OptimizeSpec {
  double constraint = 0.04;
  GridSpec t_s0_grid;
  GridSpec t_grid;
  int refinement = 0;
  GammaSearchPolicy gamma_policy;

  SearchSpace search_space(const ScheduleSpec& sched) const;
};

struct StrategySpec {
  GridSpec beta_grid;
  bool on_model_sensitivity = false;
  long long sensitivity_frames = 20000;
};

struct SimulateSpec {
  enum class Target { kDetector, kSystem };
  Target target = Target::kDetector;
  long long trials = 100000;
  long long frames = 100000;
  Hypothesis hypothesis = Hypothesis::kIdle;
  Duplex duplex = Duplex::kFull;
  DetectorDraw detector = DetectorDraw::kAnalytic;
  OnModel on_model = OnModel::kExponential;
  double t_s = 0;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kSenseCurves;
  uint64_t seed = 42;
  std::string output;

  std::optional<SensingConfig> sensing;
  std::optional<TrafficModel> traffic;
  std::optional<LinkModel> link;
  std::optional<ScheduleSpec> schedule;
  std::optional<SweepSpec> sweep;
  std::optional<OptimizeSpec> optimize;
  std::optional<StrategySpec> strategy;
  std::optional<SimulateSpec> simulate;

  nlohmann::json resolved;  // merged document the config was parsed from
};

// Built-in parameter presets; throws ConfigError for unknown names.
nlohmann::json preset_json(const std::string& name);

// Overlay wins; objects merge recursively, everything else is replaced.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overlay);

// Parses and validates a merged document. Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);

// Reads a config file, applies its "preset" key and the optional overrides.
ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  const std::string& preset_override = "",
                                  std::optional<uint64_t> seed_override = {});

// Resolved units and derived quantities (sample counts, the ON rate,
// linear SNRs) for `fdcr validate`.
nlohmann::json validation_json(const ExperimentConfig& cfg);

}  // namespace fdcr
