#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treecut/family.hpp"
#include "treecut/moments.hpp"
#include "treecut/quadrature.hpp"

namespace treecut {

enum class Regime { TwoSidedGeneric, TwoSidedHalf, OneSided };
std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);  // "two", "two-half", "one"

struct LimitMoments {
  Regime regime = Regime::TwoSidedGeneric;
  double alpha = 0;
  std::vector<double> m;  // m[0] = 1, ..., m[s_max]
};

inline constexpr int kDefaultLimitSMax = 8;

// Two-sided limit for alpha != 1/2, alpha > 0 (for alpha < 1/2 this is the
// law of the centered cost):
//   m_1 = Gamma(alpha - 1/2) / (sqrt 2 Gamma(alpha)),
//   m_s = 1/(4 sqrt pi) sum_k C(s,k) G(k a' - 1/2) G((s-k) a' - 1/2) / G(s a' - 1/2) m_k m_{s-k}
//         + s G(s a' - 1) / (sqrt 2 G(s a' - 1/2)) m_{s-1},   a' = alpha + 1/2.
// Throws DomainError for |alpha - 1/2| < 1e-6 or alpha <= 0.
LimitMoments limit_moments_two_sided(double alpha, int s_max = kDefaultLimitSMax);

// Limit of the centered, n-scaled cost at alpha = 1/2 through the J-integral recurrence.
LimitMoments limit_moments_two_sided_half(int s_max = kDefaultLimitSMax);

// m_s = s! / 2^{s/2} prod_{j=1}^s Gamma(j a') / Gamma(j a' + 1/2).
LimitMoments limit_moments_one_sided(double alpha, int s_max = kDefaultLimitSMax);

LimitMoments limit_moments(Regime regime, double alpha, int s_max = kDefaultLimitSMax);

// J(s1, s2, s3) = int_0^1 [x ln x + (1-x) ln(1-x)]^s1 x^{s2 - 1/2} (1-x)^{s3 - 3/2} dx
// for s1 + s2 + s3 >= 2 with s2, s3 < s1 + s2 + s3; NonIntegrable otherwise.
// Primary rule: tanh-sinh on [0, 1/2] and [1/2, 1].
QuadratureResult J_integral_detailed(int s1, int s2, int s3);
double J_integral(int s1, int s2, int s3);
// Independent rule for cross-checks: geometrically graded Gauss-Legendre
// panels towards both ends with Gauss-Jacobi rules on the innermost panels.
double J_integral_graded(int s1, int s2, int s3);

double rayleigh_density(double y);
double rayleigh_moment(double s);  // 2^{s/2} Gamma(1 + s/2)

struct LeadingTerm {
  double coefficient = 0;  // NaN when estimate_required
  double n_power = 0;
  int log_power = 0;
  bool estimate_required = false;
  std::string describe() const;
};

// Leading term of E[cost] for the toll n^alpha: sigma m_1 n^{alpha + 1/2}
// (two-sided alpha > 1/2 and one-sided), (sigma / sqrt(2 pi)) n ln n at
// alpha = 1/2, and a linear term with unknown coefficient for alpha < 1/2.
LeadingTerm predicted_mean(const FamilyConstants& constants, double alpha, Variant variant);

}  // namespace treecut
