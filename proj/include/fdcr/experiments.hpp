#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fdcr/config.hpp"

namespace fdcr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvSchemaVersion = "fdcr-csv-v1";
inline constexpr const char* kRngDescription =
    "xoshiro256++ (splitmix64-seeded), Marsaglia-Tsang ziggurat normals";

struct RunResult {
  std::vector<std::string> artifacts;  // file names within the output dir
  bool infeasible = false;
  std::string message;  // diagnostic for infeasible runs
  nlohmann::json summary;
};

// Executes the configured experiment, writing its CSVs plus
// run_metadata.json into out_dir.
RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir);

}  // namespace fdcr
