#include "treecut/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kHalfLog2Pi = 0.91893853320467274178;

bool is_pole(double x) { return x <= 0 && x == std::floor(x); }

// Lanczos series A(x) for the shifted argument x (Gamma(x + 1) form).
double lanczos_sum(double x) {
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  return sum;
}

// ln Gamma(x) for x >= 1/2.
double log_gamma_positive(double x) {
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

}  // namespace

double gamma_fn(double x) {
  if (is_pole(x)) throw DomainError("Gamma has a pole at " + std::to_string(x));
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  if (x > 171.6) return std::numeric_limits<double>::infinity();
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_abs_gamma(double x) {
  if (is_pole(x)) throw DomainError("Gamma has a pole at " + std::to_string(x));
  if (x < 0.5) {
    return std::log(M_PI / std::fabs(std::sin(M_PI * x))) - log_gamma_positive(1.0 - x);
  }
  return log_gamma_positive(x);
}

int gamma_sign(double x) {
  if (x > 0) return 1;
  if (is_pole(x)) throw DomainError("Gamma has a pole at " + std::to_string(x));
  // Between -2k-1 and -2k the sign is negative, between -2k-2 and -2k-1 positive.
  return static_cast<long long>(std::floor(x)) % 2 == 0 ? 1 : -1;
}

double gamma_ratio(double a, double b) {
  return gamma_sign(a) * gamma_sign(b) * std::exp(log_abs_gamma(a) - log_abs_gamma(b));
}

double beta_fn(double a, double b) {
  return gamma_sign(a) * gamma_sign(b) * gamma_sign(a + b) *
         std::exp(log_abs_gamma(a) + log_abs_gamma(b) - log_abs_gamma(a + b));
}

double gamma_q(double a, double x) {
  if (a <= 0) throw DomainError("gamma_q needs a > 0");
  if (x < 0) throw DomainError("gamma_q needs x >= 0");
  if (x == 0) return 1.0;
  const double log_prefix = a * std::log(x) - x - log_abs_gamma(a);
  constexpr double eps = 1e-16;
  if (x < a + 1) {
    // Series for P(a, x).
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Continued fraction for Q(a, x), modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < eps) break;
  }
  return std::exp(log_prefix) * h;
}

double chi_square_sf(double statistic, int df) {
  if (df < 1) throw DomainError("chi-square needs df >= 1");
  if (statistic <= 0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * statistic);
}

}  // namespace treecut
