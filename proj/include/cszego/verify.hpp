// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace cszego {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string suite;
  std::string name;
  double value;
  double reference;
  double tolerance;
  /// tolerance - |value - reference| for equalities, slack for
  /// inequalities; negative exactly when the check fails.
  double margin;
  bool passed;
};

/// Quick stays at n <= 256; full adds the n = 512 -> 1024 operator
/// refinement checks.
std::vector<CheckResult> run_verification(VerifyLevel level);

}  // namespace cszego
