#pragma once

#include <optional>

#include "hosb/model.hpp"

namespace hosb {

/// Outcome of one solver run.
struct RunResult {
  SpinConfig spins;
  double energy = 0.0;
  long steps_used = 0;
  bool success = false;
};

inline constexpr double kSuccessTolerance = 1e-9;

inline bool reaches_optimum(double energy, std::optional<double> known_optimum) {
  return known_optimum.has_value() && energy <= *known_optimum + kSuccessTolerance;
}

}  // namespace hosb
