#pragma once

#include <optional>
#include <vector>

#include "treecut/family.hpp"
#include "treecut/rational.hpp"

namespace treecut {

inline constexpr int kDefaultExactCutoff = 400;
// Exact rationals past this size are refused (memory grows like n^2 log n bits).
inline constexpr int kMaxExactCutoff = 5000;

// Weighted tree counts T_1..T_{n_max}. Exact rationals are kept up to
// exact_cutoff; every n also has a float value stored as T_n rho^n, which
// stays O(n^{-3/2}) instead of overflowing.
struct WeightedCounts {
  FamilySpec family;
  int n_max = 0;
  int exact_cutoff = 0;
  std::vector<Rational> exact;       // index n, 1 <= n <= exact_max()
  std::vector<long double> scaled;   // index n: T_n rho^n
  std::vector<double> log_values;    // index n: ln T_n
  double log_rho = 0;

  int exact_max() const { return static_cast<int>(exact.size()) - 1; }
  bool has_exact(int n) const { return n >= 1 && n <= exact_max(); }
};

// Fills counts through the convolution recurrence
//   (n - 1) T_n = sum_{k=1}^{n-1} (a1 k + a0) T_k T_{n-k},
// and checks the exact values against Lagrange inversion for n <= 30.
WeightedCounts compute_counts(const FamilySpec& spec, int n_max,
                              int exact_cutoff = kDefaultExactCutoff);

// T_n = (1/n) [w^{n-1}] Phi(w)^n for 1 <= n <= n_max; independent of the recurrence.
std::vector<Rational> lagrange_counts(const FamilySpec& spec, int n_max);

// Law of the root-component size K_n after one uniform cut:
//   p_{n,k} = (a1 k + a0) T_k T_{n-k} / ((n - 1) T_n),  k = 1..n-1.
// The symmetrized version averages p_{n,k} and p_{n,n-k}.
struct SplitDistribution {
  int n = 0;
  bool symmetrized = false;
  std::vector<double> probs;                   // probs[k - 1] = p_{n,k}
  std::optional<std::vector<Rational>> exact;  // present when n <= exact cutoff

  double operator[](int k) const { return probs[k - 1]; }
};

SplitDistribution split_distribution(const WeightedCounts& counts, int n, bool symmetrized = false);

// Row kernels used by the moment recurrences; out[k] = p_{n,k} for 1 <= k < n
// (out[0] and out[n] are left at zero). Exact rows require n <= exact_max().
template <class Real>
void fill_split_row(const WeightedCounts& counts, int n, std::vector<Real>& out);
void fill_split_row_exact(const WeightedCounts& counts, int n, std::vector<Rational>& out);

}  // namespace treecut
