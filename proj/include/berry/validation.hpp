#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace berry {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed error
  double tolerance = 0.0;
};

/// Reproduces the closed-form connections, curvatures and loop phases of the
/// built-in coherent-state families through the experiment pipeline.
/// `with_oracle` adds the Schrodinger-evolution checks (a few seconds).
std::vector<CheckResult> run_validation_suite(std::uint64_t seed, bool with_oracle = true);

}  // namespace berry
