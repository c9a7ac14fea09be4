#pragma once

// Self-check suite run by `qcorr check`.

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/oracle.hpp"

namespace qcorr {

struct CheckResult {
  std::string name;
  double deviation = 0.0;  // worst measured deviation
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::vector<CheckResult> results;

  bool passed() const;
  /// One line per check: PASS/FAIL, name, deviation and tolerance.
  std::string to_string() const;
};

struct CheckOptions {
  OptimizerConfig oracle;
  std::uint64_t seed = 20240601;
  int random_states = 40;
  int workers = 1;
  /// Multiplies every density-level entropy. Set to -1 only to confirm that
  /// the suite catches a sign error.
  double entropy_sign = 1.0;
};

CheckReport run_check(const CheckOptions& opts = {});

}  // namespace qcorr
