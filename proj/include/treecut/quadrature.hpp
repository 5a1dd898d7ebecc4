#pragma once

#include <functional>
#include <vector>

namespace treecut {

// Integrand for endpoint-aware rules: receives the abscissa x together with
// its exact distances to the left and right ends of the interval, so that
// factors like (1 - x)^p stay accurate when x is within an ulp of 1.
using EndpointIntegrand = std::function<double(double x, double from_left, double from_right)>;

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  int evaluations = 0;
};

// Double-exponential (tanh-sinh) rule on [a, b]. The step is halved until two
// successive levels agree to `tolerance` (absolute) or `max_levels` is hit.
QuadratureResult tanh_sinh(const EndpointIntegrand& f, double a, double b,
                           double tolerance = 1e-13, int max_levels = 12);

// Integral over [0, inf) via the substitution x = u / (1 - u) followed by tanh-sinh.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double tolerance = 1e-13);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1]
// (Golub-Welsch). alpha = beta = 0 gives Gauss-Legendre.
GaussRule gauss_jacobi(int points, double alpha, double beta);

}  // namespace treecut
