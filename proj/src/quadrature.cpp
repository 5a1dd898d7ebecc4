#include "treecut/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "treecut/error.hpp"
#include "treecut/special_functions.hpp"

namespace treecut {

QuadratureResult tanh_sinh(const EndpointIntegrand& f, double a, double b, double tolerance,
                           int max_levels) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);
  // Past t_max the node distance to the endpoint underflows.
  constexpr double t_max = 6.5;
  QuadratureResult result;

  // Contribution of the node at parameter t (both mirrored points for t > 0).
  auto node = [&](double t) {
    const double s = 0.5 * M_PI * std::sinh(t);
    const double e = std::exp(-2.0 * std::fabs(s));
    // 1 - tanh|s| = 2e / (1 + e), computed without cancellation.
    const double one_minus = 2.0 * e / (1.0 + e);
    const double ch = std::cosh(s);
    const double w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
    const double dist = half * one_minus;  // distance of the node from its nearer endpoint
    double sum = 0;
    if (t == 0) {
      sum = w * f(center, center - a, b - center);
    } else if (dist > 0 && w > 0) {
      sum += w * f(b - dist, half * 2 - dist, dist);
      sum += w * f(a + dist, dist, half * 2 - dist);
    }
    ++result.evaluations;
    return sum;
  };

  double h = 1.0;
  double sum = node(0.0);
  for (double t = h; t <= t_max; t += h) sum += node(t);
  double estimate = half * h * sum;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2 * h) sum += node(t);
    const double next = half * h * sum;
    result.error_estimate = std::fabs(next - estimate);
    estimate = next;
    if (level >= 3 && result.error_estimate <= tolerance) break;
  }
  result.value = estimate;
  return result;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tolerance) {
  // x = u / (1 - u), dx = du / (1 - u)^2.
  return tanh_sinh(
      [&](double u, double, double one_minus_u) {
        if (one_minus_u <= 0) return 0.0;
        const double x = u / one_minus_u;
        const double value = f(x) / (one_minus_u * one_minus_u);
        return std::isfinite(value) ? value : 0.0;
      },
      0.0, 1.0, tolerance);
}

GaussRule gauss_jacobi(int points, double alpha, double beta) {
  if (points < 1) throw DomainError("gauss_jacobi needs at least one point");
  if (alpha <= -1 || beta <= -1) throw DomainError("Jacobi weight exponents must exceed -1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  const double ab = alpha + beta;
  for (int i = 0; i < points; ++i) {
    const double n = i;
    const double denom = (2 * n + ab) * (2 * n + ab + 2);
    jacobi(i, i) = denom == 0 ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / denom;
    if (i + 1 < points) {
      const double m = n + 1;
      double ratio = 0;
      if (i == 0) {
        // The general formula has a removable 0/0 at m = 1 when alpha + beta = -1.
        ratio = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
      } else {
        const double num = 4 * m * (m + alpha) * (m + beta) * (m + ab);
        const double den = (2 * m + ab) * (2 * m + ab) * (2 * m + ab + 1) * (2 * m + ab - 1);
        ratio = num / den;
      }
      const double off = std::sqrt(ratio);
      jacobi(i, i + 1) = off;
      jacobi(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  const double mu0 = std::pow(2.0, ab + 1) * beta_fn(alpha + 1, beta + 1);
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace treecut
