#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cenfrac {

struct VerifyConfig {
  double beta = 0.5;
  /// Multiplies every tolerance; 0 makes every check fail.
  double tol_scale = 1.0;
  /// Multiplies Monte Carlo sample sizes (floored at small minimums).
  double mc_scale = 1.0;
  std::uint64_t seed = 20240611;
};

struct CheckResult {
  std::string id;
  int criterion = 0;
  std::string description;
  double target = 0.0;
  double achieved = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string note;
};

/// Runs the identity suite; one or more checks per acceptance criterion.
/// `on_result` (optional) sees each check as soon as it finishes.
std::vector<CheckResult> run_verification(
    const VerifyConfig& config, const std::function<void(const CheckResult&)>& on_result = {});

/// Runs only the checks of one criterion (1..15).
std::vector<CheckResult> run_criterion(int criterion, const VerifyConfig& config);

}  // namespace cenfrac
