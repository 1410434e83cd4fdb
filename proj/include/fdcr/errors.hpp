#pragma once

#include <stdexcept>

namespace fdcr {

// Invalid or unparseable configuration (bad units, schema violations,
// sample counts that round to zero, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested target cannot be met (threshold inversion with no positive
// solution, constrained search with an empty feasible set, ...).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fdcr
