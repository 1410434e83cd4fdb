#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fdcr/errors.hpp"
#include "fdcr/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
};

fdcr::ExperimentConfig load(const CommonArgs& args) {
  if (args.config_path.empty() && args.preset.empty()) {
    throw fdcr::ConfigError("either a config file or --preset is required");
  }
  return fdcr::load_config_file(args.config_path, args.preset, args.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdcr - full-duplex cognitive radio performance toolkit"};
  app.require_subcommand(1);

  CommonArgs run_args, validate_args;

  CLI::App* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", run_args.config_path, "experiment config (JSON)");
  run->add_option("--preset", run_args.preset, "built-in parameter preset");
  run->add_option("--out-dir", run_args.out_dir, "output directory");
  run->add_option("--seed", run_args.seed, "override the RNG seed");

  CLI::App* validate =
      app.add_subcommand("validate", "parse a config and echo resolved values");
  validate->add_option("config", validate_args.config_path,
                       "experiment config (JSON)");
  validate->add_option("--preset", validate_args.preset,
                       "built-in parameter preset");
  validate->add_option("--seed", validate_args.seed, "override the RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const fdcr::ExperimentConfig cfg = load(run_args);
      const fdcr::RunResult result =
          fdcr::run_experiment(cfg, run_args.out_dir);
      for (const std::string& artifact : result.artifacts) {
        std::cout << "wrote " << (std::filesystem::path(run_args.out_dir) /
                                  artifact).string()
                  << "\n";
      }
      if (result.infeasible) {
        std::cerr << "infeasible: " << result.message << "\n";
        return kExitInfeasible;
      }
      return kExitOk;
    }
    const fdcr::ExperimentConfig cfg = load(validate_args);
    std::cout << fdcr::validation_json(cfg).dump(2) << "\n";
    return kExitOk;
  } catch (const fdcr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const fdcr::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
