#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treecut/family.hpp"
#include "treecut/limit_laws.hpp"
#include "treecut/moments.hpp"

namespace treecut {

struct ConvergenceRow {
  int n = 0;
  int s = 0;
  double normalized = 0;
  double limit = 0;
  double relative_error = 0;  // NaN when limit == 0
  double absolute_error = 0;
};

struct FittedCoefficient {
  std::string name;  // "mu" or "delta"
  double value = 0;
  double error_bar = 0;  // change against the fit that stops at n_max / 2
};

struct ConvergenceReport {
  FamilySpec family;
  Variant variant = Variant::TwoSided;
  double alpha = 0;
  std::vector<ConvergenceRow> rows;
  std::optional<FittedCoefficient> fitted;

  const ConvergenceRow& row(int n, int s) const;
};

// Scaled moments next to their limits, for s = 1..table.s_max and every n
// in `ns` (default: n_max, n_max/2, n_max/4, ... down to 8, at most 6 sizes).
//   one-sided, two-sided alpha > 1/2:  sigma^-s n^{-s alpha'} E[V^s]
//   two-sided 0 < alpha < 1/2:         sigma^-s n^{-s alpha'} E[(X - mu n)^s]
//   two-sided alpha = 1/2:             sigma^-s n^-s E[(X - sigma/sqrt(2 pi) n ln n - delta n)^s]
//   two-sided alpha = 0:               n^-s E[X^s] against (1 + t_1)^s, or 1 when
//                                      isolated vertices cost nothing
// The two shifted regimes need `shift` (mu or delta) and throw MissingShift otherwise.
ConvergenceReport normalize_moments(const MomentTable& table, const FamilyConstants& constants,
                                    std::optional<FittedCoefficient> shift = std::nullopt,
                                    std::vector<int> ns = {});

struct LeastSquaresFit {
  std::vector<double> coefficients;
  double relative_residual = 0;
  double condition_number = 0;  // of the column-normalized design
};

// Least squares with columns scaled to unit norm before solving.
LeastSquaresFit least_squares(const std::vector<std::vector<double>>& columns,
                              const std::vector<double>& target);

inline constexpr int kMinMuFitN = 512;
inline constexpr int kMinDeltaFitN = 1000;
// Fits above this condition number are flagged as unreliable; above
// kMuSingularLimit estimate_mu throws IllConditioned.
inline constexpr double kMuConditionLimit = 1e4;
inline constexpr double kMuSingularLimit = 1e10;

struct MuEstimate {
  double mu = 0;
  double mu_half = 0;  // same fit on sizes up to n_max / 2
  double error_bar = 0;
  double relative_residual = 0;
  double condition_number = 0;
  bool flagged = false;
  std::vector<int> grid;
  FittedCoefficient coefficient() const { return {"mu", mu, error_bar}; }
};

// Linear coefficient of E[V_n] for alpha < 1/2 from
//   E[V_n] ~ mu n + A n^{alpha + 1/2} + B n^alpha (+ D for alpha > 0)
// on n = n_max 2^{-j/2}, j = 0..6. Needs n_max >= kMinMuFitN.
MuEstimate estimate_mu(const MomentTable& table);

struct DeltaEstimate {
  double delta = 0;
  double delta_half = 0;
  double error_bar = 0;
  double predicted_coefficient = 0;  // sigma / sqrt(2 pi)
  double free_coefficient = 0;       // n ln n coefficient with all terms free
  double free_delta = 0;
  double relative_residual = 0;
  std::vector<int> grid;
  FittedCoefficient coefficient() const { return {"delta", delta, error_bar}; }
};

// alpha = 1/2: E[X_n] - sigma/sqrt(2 pi) n ln n ~ delta n + C sqrt(n) ln n on a
// geometric grid from 500 to n_max. The free fit adds a sqrt(n) term and
// estimates the n ln n coefficient too. Needs n_max >= kMinDeltaFitN.
DeltaEstimate estimate_delta(const MomentTable& table, const FamilyConstants& constants);

struct IndependenceRow {
  int n = 0;
  double difference = 0;
};

struct IndependenceCheck {
  int s = 0;
  std::vector<IndependenceRow> rows;
  bool strictly_decreasing = false;
  bool final_below_first = false;
  bool all_zero = false;
};

// |normalized_a(n) - normalized_b(n)| over the sizes present in both reports.
IndependenceCheck family_independence_check(const ConvergenceReport& a, const ConvergenceReport& b,
                                            int s);

}  // namespace treecut
