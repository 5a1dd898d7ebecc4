#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "treecut/counts.hpp"
#include "treecut/family.hpp"
#include "treecut/rational.hpp"

namespace treecut {

enum class Variant { OneSided, TwoSided };
std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

// What an isolated vertex (a component of size 1) costs. The default follows
// the boundary conditions X_1 = Y_1 = t_1; `Zero` charges only actual cuts, so
// the total is a sum of t_m over the cuts performed.
enum class IsolatedVertexCost { Toll, Zero };

// Toll t_n = n^alpha, or an explicit rational table t_1..t_N.
struct TollSpec {
  double alpha = 0;
  std::vector<Rational> table;  // table[n - 1] = t_n when non-empty
  IsolatedVertexCost isolated = IsolatedVertexCost::Toll;

  double alpha_prime() const { return alpha + 0.5; }
  // True when every t_n is rational: alpha a nonnegative integer, or a table.
  bool is_exact() const;
  Rational exact_toll(int n) const;
  long double toll(int n) const;
  Rational exact_isolated_cost() const;
  long double isolated_cost() const;
};

TollSpec power_toll(double alpha, IsolatedVertexCost isolated = IsolatedVertexCost::Toll);

enum class MomentMode { Rational, Float };
enum class FloatPrecision { Double, Extended };

struct MomentOptions {
  MomentMode mode = MomentMode::Float;
  FloatPrecision precision = FloatPrecision::Double;
  // Two-sided only: sum over k <= n/2 with symmetrized weights instead of the
  // direct sum over all k. Both give the same values up to rounding.
  bool symmetric_fast_path = true;
};

// mu_n^{[s]} = E[V_n^s] for 1 <= n <= n_max, 0 <= s <= s_max, where V is the
// one-sided cost Y or the two-sided cost X.
struct MomentTable {
  Variant variant = Variant::TwoSided;
  FamilySpec family;
  TollSpec toll;
  int n_max = 0;
  int s_max = 0;
  MomentMode mode = MomentMode::Float;
  std::vector<std::vector<long double>> values;  // values[s][n]
  std::vector<std::vector<Rational>> exact;      // exact[s][n], Rational mode only

  long double value(int n, int s) const { return values.at(s).at(n); }
  const Rational& exact_value(int n, int s) const { return exact.at(s).at(n); }
  bool has_exact() const { return mode == MomentMode::Rational; }
};

MomentTable one_sided_moments(const WeightedCounts& counts, const TollSpec& toll, int n_max,
                              int s_max, const MomentOptions& options = {});

MomentTable two_sided_moments(const WeightedCounts& counts, const TollSpec& toll, int n_max,
                              int s_max, const MomentOptions& options = {});

MomentTable compute_moments(Variant variant, const WeightedCounts& counts, const TollSpec& toll,
                            int n_max, int s_max, const MomentOptions& options = {});

// E[(V_n - shift(n))^s] for every n of the table (index n, entry 0 unused),
// from the raw moments by binomial expansion.
std::vector<long double> shifted_moments(const MomentTable& table,
                                         const std::function<long double(int)>& shift, int s);
std::vector<Rational> shifted_moments_exact(const MomentTable& table,
                                            const std::function<Rational(int)>& shift, int s);

}  // namespace treecut
