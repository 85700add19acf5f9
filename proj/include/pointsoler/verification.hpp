// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// The self-verification suite: ten acceptance checks that compare the closed
// forms against the independent Gamma root finder, continuation and
// finite-difference oracles. Every tolerance is pinned in verification.cpp.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pointsoler {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // one line: the measured quantities behind the verdict
};

inline constexpr int kNumCriteria = 10;

// Runs one criterion (1..10). Exceptions thrown by the library are caught and
// reported as a failure with the exception message.
CriterionResult run_criterion(int id, int jobs);

// Runs all criteria in order; `progress` (optional) is called after each one.
std::vector<CriterionResult> run_all_criteria(
    int jobs, const std::function<void(const CriterionResult&)>& progress = {});

// "PASS criterion 3: thresholds -- detail" (no trailing newline).
std::string format_result(const CriterionResult& r);

}  // namespace pointsoler
