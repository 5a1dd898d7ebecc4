#include "treecut/counts.hpp"

#include <cmath>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

namespace {

constexpr int kLagrangeCheckLimit = 30;

void check_range(const WeightedCounts& counts, int n) {
  if (n < 2 || n > counts.n_max) {
    throw OutOfRange("split size " + std::to_string(n) + " outside [2, " +
                     std::to_string(counts.n_max) + "]");
  }
}

}  // namespace

std::vector<Rational> lagrange_counts(const FamilySpec& spec, int n_max) {
  // phi[j] for j < n_max suffices: only [w^{n-1}] with n <= n_max is needed.
  std::vector<Rational> phi(n_max);
  for (int j = 0; j < n_max; ++j) phi[j] = phi_coefficient(spec, static_cast<unsigned>(j));
  std::vector<Rational> power(n_max, Rational(0));  // Phi^n truncated
  power[0] = 1;
  std::vector<Rational> out(n_max + 1, Rational(0));
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Rational> next(n_max, Rational(0));
    for (int i = 0; i < n_max; ++i) {
      if (power[i] == 0) continue;
      for (int j = 0; i + j < n_max; ++j) {
        if (phi[j] != 0) next[i + j] += power[i] * phi[j];
      }
    }
    power = std::move(next);
    out[n] = power[n - 1] / n;
  }
  return out;
}

WeightedCounts compute_counts(const FamilySpec& spec, int n_max, int exact_cutoff) {
  if (n_max < 1) throw OutOfRange("n_max must be at least 1");
  if (exact_cutoff < 0) throw OutOfRange("exact_cutoff must be nonnegative");
  if (exact_cutoff > kMaxExactCutoff) {
    throw OverflowPolicy("exact_cutoff " + std::to_string(exact_cutoff) + " exceeds the limit of " +
                         std::to_string(kMaxExactCutoff));
  }
  WeightedCounts counts;
  counts.family = spec;
  counts.n_max = n_max;
  counts.exact_cutoff = exact_cutoff;

  const int exact_n = std::min(n_max, exact_cutoff);
  counts.exact.assign(exact_n + 1, Rational(0));
  if (exact_n >= 1) counts.exact[1] = 1;
  for (int n = 2; n <= exact_n; ++n) {
    Rational sum(0);
    for (int k = 1; k < n; ++k) {
      sum += (spec.a1 * k + spec.a0) * counts.exact[k] * counts.exact[n - k];
    }
    counts.exact[n] = sum / (n - 1);
  }

  const double rho = [&] {
    const double tau = 1.0 / spec.a1.get_d();
    return tau / evaluate_phi(spec, tau).value;
  }();
  counts.log_rho = std::log(rho);
  const long double a1 = spec.a1.get_d();
  const long double a0 = spec.a0.get_d();
  counts.scaled.assign(n_max + 1, 0.0L);
  counts.log_values.assign(n_max + 1, 0.0);
  counts.scaled[1] = rho;
  for (int n = 2; n <= n_max; ++n) {
    // Kahan-compensated convolution; every term is positive.
    long double sum = 0, carry = 0;
    for (int k = 1; k < n; ++k) {
      const long double term = (a1 * k + a0) * counts.scaled[k] * counts.scaled[n - k] - carry;
      const long double t = sum + term;
      carry = (t - sum) - term;
      sum = t;
    }
    counts.scaled[n] = sum / (n - 1);
  }
  for (int n = 1; n <= n_max; ++n) {
    counts.log_values[n] = static_cast<double>(std::log(counts.scaled[n])) - n * counts.log_rho;
  }

  const int check = std::min(exact_n, kLagrangeCheckLimit);
  if (check >= 1) {
    auto oracle = lagrange_counts(spec, check);
    for (int n = 1; n <= check; ++n) {
      if (oracle[n] != counts.exact[n]) {
        throw std::logic_error("weighted count recurrence disagrees with Lagrange inversion at n = " +
                               std::to_string(n));
      }
    }
  }
  return counts;
}

template <class Real>
void fill_split_row(const WeightedCounts& counts, int n, std::vector<Real>& out) {
  check_range(counts, n);
  out.assign(n + 1, Real(0));
  const Real a1 = static_cast<Real>(counts.family.a1.get_d());
  const Real a0 = static_cast<Real>(counts.family.a0.get_d());
  const Real scale = Real(1) / (static_cast<Real>(n - 1) * static_cast<Real>(counts.scaled[n]));
  for (int k = 1; k < n; ++k) {
    out[k] = (a1 * k + a0) * static_cast<Real>(counts.scaled[k]) *
             static_cast<Real>(counts.scaled[n - k]) * scale;
  }
}

template void fill_split_row<double>(const WeightedCounts&, int, std::vector<double>&);
template void fill_split_row<long double>(const WeightedCounts&, int, std::vector<long double>&);

void fill_split_row_exact(const WeightedCounts& counts, int n, std::vector<Rational>& out) {
  check_range(counts, n);
  if (!counts.has_exact(n)) {
    throw OutOfRange("exact split row " + std::to_string(n) + " beyond exact cutoff " +
                     std::to_string(counts.exact_max()));
  }
  out.assign(n + 1, Rational(0));
  const Rational denom = (n - 1) * counts.exact[n];
  for (int k = 1; k < n; ++k) {
    out[k] = (counts.family.a1 * k + counts.family.a0) * counts.exact[k] * counts.exact[n - k] / denom;
  }
}

SplitDistribution split_distribution(const WeightedCounts& counts, int n, bool symmetrized) {
  check_range(counts, n);
  SplitDistribution dist;
  dist.n = n;
  dist.symmetrized = symmetrized;
  dist.probs.resize(n - 1);
  if (counts.has_exact(n)) {
    std::vector<Rational> row;
    fill_split_row_exact(counts, n, row);
    std::vector<Rational> exact(n - 1);
    for (int k = 1; k < n; ++k) {
      exact[k - 1] = symmetrized ? Rational((row[k] + row[n - k]) / 2) : row[k];
      dist.probs[k - 1] = exact[k - 1].get_d();
    }
    dist.exact = std::move(exact);
  } else {
    std::vector<long double> row;
    fill_split_row(counts, n, row);
    for (int k = 1; k < n; ++k) {
      dist.probs[k - 1] = static_cast<double>(symmetrized ? (row[k] + row[n - k]) / 2 : row[k]);
    }
  }
  return dist;
}

}  // namespace treecut
