#include "treecut/limit_laws.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "treecut/error.hpp"
#include "treecut/special_functions.hpp"

namespace treecut {

namespace {

constexpr double kPi = 3.14159265358979323846;

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_s_max(int s_max, int lowest) {
  if (s_max < lowest) throw DomainError("s_max must be at least " + std::to_string(lowest));
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::TwoSidedGeneric: return "two";
    case Regime::TwoSidedHalf: return "two-half";
    case Regime::OneSided: return "one";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "two") return Regime::TwoSidedGeneric;
  if (text == "two-half") return Regime::TwoSidedHalf;
  if (text == "one") return Regime::OneSided;
  throw ConfigError("unknown regime '" + std::string(text) + "' (expected two, two-half or one)");
}

LimitMoments limit_moments_two_sided(double alpha, int s_max) {
  check_s_max(s_max, 1);
  if (std::abs(alpha - 0.5) < 1e-6) {
    throw DomainError("alpha = 1/2 is a pole of the generic recurrence; use the two-half regime");
  }
  if (!(alpha > 0)) throw DomainError("the two-sided limit recurrence needs alpha > 0");
  const double ap = alpha + 0.5;
  LimitMoments out{Regime::TwoSidedGeneric, alpha, {1.0}};
  auto& m = out.m;
  m.push_back(gamma_ratio(alpha - 0.5, alpha) / std::sqrt(2.0));
  for (int s = 2; s <= s_max; ++s) {
    const double top = s * ap - 0.5;
    double acc = 0;
    for (int k = 1; k < s; ++k) {
      const double g = gamma_sign(k * ap - 0.5) * gamma_sign((s - k) * ap - 0.5) * gamma_sign(top) *
                       std::exp(log_abs_gamma(k * ap - 0.5) + log_abs_gamma((s - k) * ap - 0.5) -
                                log_abs_gamma(top));
      acc += binom(s, k) * g * m[k] * m[s - k];
    }
    acc /= 4 * std::sqrt(kPi);
    acc += s * gamma_ratio(s * ap - 1, top) / std::sqrt(2.0) * m[s - 1];
    m.push_back(acc);
  }
  return out;
}

namespace {

void check_J_indices(int s1, int s2, int s3) {
  const int s = s1 + s2 + s3;
  if (s1 < 0 || s2 < 0 || s3 < 0 || s < 2 || s2 >= s || s3 >= s) {
    throw NonIntegrable("J(" + std::to_string(s1) + "," + std::to_string(s2) + "," +
                        std::to_string(s3) + ") is outside the index set s >= 2, s2 < s, s3 < s");
  }
}

// x^{s2 - 1/2} y^{s3 + s1 - 3/2} (h / y)^{s1}, h = x ln x + y ln y, y = 1 - x,
// with x and y both passed accurately.
double J_integrand(int s1, int s2, int s3, double x, double y) {
  if (x <= 0 || y <= 0) return 0.0;
  const double lx = x < 0.5 ? std::log(x) : std::log1p(-y);
  const double ly = y < 0.5 ? std::log(y) : std::log1p(-x);
  const double ratio = x * lx / y + ly;
  const double power = std::pow(x, s2 - 0.5) * std::pow(y, s3 + s1 - 1.5);
  return power * std::pow(ratio, s1);
}

}  // namespace

QuadratureResult J_integral_detailed(int s1, int s2, int s3) {
  check_J_indices(s1, s2, s3);
  auto left = [&](double, double from_left, double) {
    return J_integrand(s1, s2, s3, from_left, 1.0 - from_left);
  };
  auto right = [&](double, double, double from_right) {
    return J_integrand(s1, s2, s3, 1.0 - from_right, from_right);
  };
  const QuadratureResult a = tanh_sinh(left, 0.0, 0.5, 1e-14);
  const QuadratureResult b = tanh_sinh(right, 0.5, 1.0, 1e-14);
  return {a.value + b.value, a.error_estimate + b.error_estimate, a.evaluations + b.evaluations};
}

double J_integral(int s1, int s2, int s3) { return J_integral_detailed(s1, s2, s3).value; }

double J_integral_graded(int s1, int s2, int s3) {
  check_J_indices(s1, s2, s3);
  constexpr int kPanels = 80;
  constexpr int kPoints = 24;
  static const GaussRule legendre = gauss_jacobi(kPoints, 0.0, 0.0);

  // g(u) integrated over [0, 1/2] where u is the distance to the singular end;
  // `edge_power` is the algebraic exponent of g at u = 0.
  auto side = [&](auto&& g, double edge_power) {
    double total = 0;
    double hi = 0.5;
    for (int p = 0; p < kPanels; ++p) {
      const double lo = hi / 2;
      const double half = (hi - lo) / 2;
      for (int i = 0; i < kPoints; ++i) {
        total += half * legendre.weights[i] * g(lo + half * (1 + legendre.nodes[i]));
      }
      hi = lo;
    }
    // Innermost panel [0, hi]: weight u^{edge_power}, smooth remainder g / u^{edge_power}.
    const GaussRule jacobi = gauss_jacobi(kPoints, 0.0, edge_power);
    const double scale = std::pow(hi / 2, edge_power + 1);
    for (int i = 0; i < kPoints; ++i) {
      const double u = hi / 2 * (1 + jacobi.nodes[i]);
      total += scale * jacobi.weights[i] * g(u) / std::pow(u, edge_power);
    }
    return total;
  };
  const double left = side([&](double u) { return J_integrand(s1, s2, s3, u, 1.0 - u); },
                           s2 + s1 - 0.5);
  const double right = side([&](double u) { return J_integrand(s1, s2, s3, 1.0 - u, u); },
                            s3 + s1 - 1.5);
  return left + right;
}

LimitMoments limit_moments_two_sided_half(int s_max) {
  check_s_max(s_max, 0);
  LimitMoments out{Regime::TwoSidedHalf, 0.5, {1.0}};
  auto& m = out.m;
  if (s_max >= 1) m.push_back(0.0);
  const double inv = 1.0 / std::sqrt(2 * kPi);
  for (int s = 2; s <= s_max; ++s) {
    double acc = 0;
    for (int s1 = 0; s1 <= s; ++s1) {
      for (int s2 = 0; s1 + s2 <= s; ++s2) {
        const int s3 = s - s1 - s2;
        if (s2 >= s || s3 >= s) continue;
        if (m[s2] == 0 || m[s3] == 0) continue;
        const double multinomial = binom(s, s1) * binom(s - s1, s2);
        acc += multinomial * std::pow(inv, s1) * m[s2] * m[s3] * J_integral(s1, s2, s3);
      }
    }
    m.push_back(gamma_ratio(s - 1, s - 0.5) / (2 * std::sqrt(kPi)) * acc);
  }
  return out;
}

LimitMoments limit_moments_one_sided(double alpha, int s_max) {
  check_s_max(s_max, 0);
  if (!(alpha >= 0)) throw DomainError("the one-sided limit needs alpha >= 0");
  const double ap = alpha + 0.5;
  LimitMoments out{Regime::OneSided, alpha, {1.0}};
  double log_product = 0;
  double log_factorial = 0;
  for (int s = 1; s <= s_max; ++s) {
    log_product += log_abs_gamma(s * ap) - log_abs_gamma(s * ap + 0.5);
    log_factorial += std::log(static_cast<double>(s));
    out.m.push_back(std::exp(log_factorial - 0.5 * s * std::log(2.0) + log_product));
  }
  return out;
}

LimitMoments limit_moments(Regime regime, double alpha, int s_max) {
  switch (regime) {
    case Regime::TwoSidedGeneric: return limit_moments_two_sided(alpha, s_max);
    case Regime::TwoSidedHalf: return limit_moments_two_sided_half(s_max);
    case Regime::OneSided: return limit_moments_one_sided(alpha, s_max);
  }
  throw DomainError("unknown regime");
}

double rayleigh_density(double y) {
  if (y < 0) throw DomainError("Rayleigh density is supported on y >= 0");
  return y * std::exp(-y * y / 2);
}

double rayleigh_moment(double s) {
  if (s < 0) throw DomainError("Rayleigh moments need s >= 0");
  return std::pow(2.0, s / 2) * gamma_fn(1 + s / 2);
}

std::string LeadingTerm::describe() const {
  std::ostringstream out;
  out.precision(12);
  if (estimate_required) {
    out << "mu * n (mu must be estimated)";
    return out.str();
  }
  out << coefficient << " * n^" << n_power;
  if (log_power == 1) out << " * ln n";
  if (log_power > 1) out << " * (ln n)^" << log_power;
  return out.str();
}

LeadingTerm predicted_mean(const FamilyConstants& constants, double alpha, Variant variant) {
  if (!(alpha >= 0)) throw DomainError("alpha must be >= 0");
  LeadingTerm term;
  if (variant == Variant::OneSided) {
    term.coefficient = constants.sigma * gamma_ratio(alpha + 0.5, alpha + 1) / std::sqrt(2.0);
    term.n_power = alpha + 0.5;
    return term;
  }
  if (std::abs(alpha - 0.5) < 1e-6) {
    term.coefficient = constants.sigma / std::sqrt(2 * kPi);
    term.n_power = 1;
    term.log_power = 1;
  } else if (alpha > 0.5) {
    term.coefficient = constants.sigma * gamma_ratio(alpha - 0.5, alpha) / std::sqrt(2.0);
    term.n_power = alpha + 0.5;
  } else {
    term.coefficient = std::numeric_limits<double>::quiet_NaN();
    term.n_power = 1;
    term.estimate_required = true;
  }
  return term;
}

}  // namespace treecut
