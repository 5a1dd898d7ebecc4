#pragma once

namespace treecut {

// Lanczos approximation (g = 7, 9 terms) with reflection for x < 1/2.
// Relative error is a few ulps over the ranges used here.
double gamma_fn(double x);

// ln|Gamma(x)|. Poles (x = 0, -1, -2, ...) raise DomainError.
double log_abs_gamma(double x);

// Sign of Gamma(x): +1 or -1.
int gamma_sign(double x);

// Gamma(a) / Gamma(b) evaluated through log differences so that large
// arguments do not overflow.
double gamma_ratio(double a, double b);

double beta_fn(double a, double b);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

// Upper tail P[chi^2_df > statistic].
double chi_square_sf(double statistic, int df);

}  // namespace treecut
