#pragma once

#include <string>
#include <vector>

#include "potred/vec.hpp"

namespace potred {

// Randomized suites exercising the analytical guarantees of the method; used by the
// `validate` CLI command and the test harness.
struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;  // degenerate cases excluded from the claim
};

struct ValidationConfig {
  int seeds = 100;     // solver-run based suites
  int samples = 1000;  // purely randomized suites
  std::string suite;   // empty: all suites
  double kappa = 0.5;
  bool break_lift = false;  // fault injection for the xi-support suite
};

std::vector<SuiteResult> run_validation(const ValidationConfig& config);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace potred
