#pragma once

#include <string>
#include <vector>

#include "treecut/analysis.hpp"

namespace treecut {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // seconds; the criterion fails when exceeded
  std::vector<ConvergenceRow> rows;
};

struct VerifyOptions {
  int workers = 1;
  std::uint64_t seed = 20240229;
};

inline constexpr int kCriterionCount = 11;

// Oracle for m_3 at alpha = 1, two-sided, from an independent mpmath script
// (unsymmetrized form of the recurrence, 40 digits).
inline constexpr double kTwoSidedAlphaOneM3 = 2.349964007466562971;

CriterionResult run_criterion(int id, const VerifyOptions& options = {});
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const VerifyOptions& options = {});

// True when a and b round to the same value at `digits` significant figures,
// in the sense |a - b| < 0.5 * 10^(e - digits + 1) with e = floor(log10 max(|a|, |b|)).
bool agree_to_significant_figures(double a, double b, int digits);

}  // namespace treecut
