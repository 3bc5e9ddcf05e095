// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cantorlab/config.hpp"

namespace cantorlab {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// Runs every module's invariant suite against the given configuration.
// Failures (including exceptions a suite provokes from the configured
// objects) are collected, never thrown.
std::vector<SuiteResult> run_selftest(const LabConfig& cfg);

}  // namespace cantorlab
