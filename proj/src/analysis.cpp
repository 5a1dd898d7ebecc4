#include "treecut/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_half(double alpha) { return std::abs(alpha - 0.5) < 1e-6; }

void require_power_toll(const TollSpec& toll) {
  if (!toll.table.empty()) throw DomainError("limit normalization needs a power toll n^alpha");
}

std::vector<int> default_sizes(int n_max) {
  std::vector<int> ns;
  for (int n = n_max; n >= 8 && ns.size() < 6; n /= 2) ns.push_back(n);
  if (ns.empty()) ns.push_back(n_max);
  std::reverse(ns.begin(), ns.end());
  return ns;
}

}  // namespace

const ConvergenceRow& ConvergenceReport::row(int n, int s) const {
  for (const auto& r : rows) {
    if (r.n == n && r.s == s) return r;
  }
  throw OutOfRange("no row for n = " + std::to_string(n) + ", s = " + std::to_string(s));
}

ConvergenceReport normalize_moments(const MomentTable& table, const FamilyConstants& constants,
                                    std::optional<FittedCoefficient> shift, std::vector<int> ns) {
  require_power_toll(table.toll);
  const double alpha = table.toll.alpha;
  const double ap = alpha + 0.5;
  const double sigma = constants.sigma;
  if (ns.empty()) ns = default_sizes(table.n_max);
  for (int n : ns) {
    if (n < 1 || n > table.n_max) throw OutOfRange("size outside the moment table");
  }

  ConvergenceReport report;
  report.family = table.family;
  report.variant = table.variant;
  report.alpha = alpha;

  std::vector<double> limit;
  std::function<long double(int)> shift_fn;
  std::function<double(int, int)> scale;  // divisor for E[(V - shift)^s] at size n
  if (table.variant == Variant::OneSided) {
    limit = limit_moments_one_sided(alpha, table.s_max).m;
    scale = [=](int n, int s) { return std::pow(sigma * std::pow(n, ap), s); };
  } else if (alpha == 0) {
    const double rate = 1.0 + static_cast<double>(table.toll.isolated_cost());
    for (int s = 0; s <= table.s_max; ++s) limit.push_back(std::pow(rate, s));
    scale = [](int n, int s) { return std::pow(static_cast<double>(n), s); };
  } else if (is_half(alpha)) {
    if (!shift || shift->name != "delta") {
      throw MissingShift("alpha = 1/2 needs a fitted delta (see estimate_delta)");
    }
    limit = limit_moments_two_sided_half(table.s_max).m;
    const long double lead = sigma / std::sqrt(2 * kPi);
    const long double delta = shift->value;
    shift_fn = [=](int n) { return lead * n * std::log(static_cast<long double>(n)) + delta * n; };
    scale = [=](int n, int s) { return std::pow(sigma * n, s); };
  } else {
    limit = limit_moments_two_sided(alpha, table.s_max).m;
    if (alpha < 0.5) {
      if (!shift || shift->name != "mu") {
        throw MissingShift("alpha < 1/2 needs a fitted mu (see estimate_mu)");
      }
      const long double mu = shift->value;
      shift_fn = [=](int n) { return mu * n; };
    }
    scale = [=](int n, int s) { return std::pow(sigma * std::pow(n, ap), s); };
  }
  report.fitted = shift;

  for (int s = 1; s <= table.s_max; ++s) {
    std::vector<long double> centered;
    if (shift_fn) centered = shifted_moments(table, shift_fn, s);
    for (int n : ns) {
      const long double raw = shift_fn ? centered[n] : table.value(n, s);
      ConvergenceRow row;
      row.n = n;
      row.s = s;
      row.normalized = static_cast<double>(raw / scale(n, s));
      row.limit = limit[s];
      row.absolute_error = std::abs(row.normalized - row.limit);
      row.relative_error = row.limit != 0 ? row.absolute_error / std::abs(row.limit)
                                          : std::numeric_limits<double>::quiet_NaN();
      report.rows.push_back(row);
    }
  }
  return report;
}

LeastSquaresFit least_squares(const std::vector<std::vector<double>>& columns,
                              const std::vector<double>& target) {
  const int rows = static_cast<int>(target.size());
  const int cols = static_cast<int>(columns.size());
  if (cols == 0 || rows < cols) throw IllConditioned("least squares needs at least as many rows as columns");
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    y(i) = target[i];
    for (int j = 0; j < cols; ++j) design(i, j) = columns[j].at(i);
  }
  const Eigen::VectorXd norms = design.colwise().norm();
  for (int j = 0; j < cols; ++j) {
    if (norms(j) == 0) throw IllConditioned("zero column in least-squares design");
    design.col(j) /= norms(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sv = svd.singularValues();
  LeastSquaresFit fit;
  fit.condition_number = sv(cols - 1) > 0 ? sv(0) / sv(cols - 1) : std::numeric_limits<double>::infinity();
  const Eigen::VectorXd x = design.colPivHouseholderQr().solve(y);
  fit.relative_residual = y.norm() > 0 ? (design * x - y).norm() / y.norm() : (design * x - y).norm();
  for (int j = 0; j < cols; ++j) fit.coefficients.push_back(x(j) / norms(j));
  return fit;
}

namespace {

LeastSquaresFit fit_mu(const MomentTable& table, int n_max, std::vector<int>& grid) {
  const double alpha = table.toll.alpha;
  grid.clear();
  for (int j = 6; j >= 0; --j) {
    grid.push_back(static_cast<int>(std::lround(n_max * std::pow(2.0, -j / 2.0))));
  }
  std::vector<std::vector<double>> columns(alpha > 0 ? 4 : 3);
  std::vector<double> target;
  for (int n : grid) {
    const double x = n;
    columns[0].push_back(x);
    columns[1].push_back(std::pow(x, alpha + 0.5));
    columns[2].push_back(std::pow(x, alpha));
    if (alpha > 0) columns[3].push_back(1.0);
    target.push_back(static_cast<double>(table.value(n, 1)));
  }
  return least_squares(columns, target);
}

}  // namespace

MuEstimate estimate_mu(const MomentTable& table) {
  require_power_toll(table.toll);
  const double alpha = table.toll.alpha;
  if (!(alpha < 0.5) || is_half(alpha)) throw DomainError("estimate_mu needs alpha < 1/2");
  if (table.n_max < kMinMuFitN) {
    throw DomainError("estimate_mu needs n_max >= " + std::to_string(kMinMuFitN));
  }
  MuEstimate out;
  std::vector<int> half_grid;
  const LeastSquaresFit fit = fit_mu(table, table.n_max, out.grid);
  if (fit.condition_number > kMuSingularLimit) {
    throw IllConditioned("mu fit is numerically singular (condition number " +
                         std::to_string(fit.condition_number) + ")");
  }
  const LeastSquaresFit half = fit_mu(table, table.n_max / 2, half_grid);
  out.mu = fit.coefficients[0];
  out.mu_half = half.coefficients[0];
  out.error_bar = std::abs(out.mu - out.mu_half);
  out.relative_residual = fit.relative_residual;
  out.condition_number = fit.condition_number;
  out.flagged = fit.condition_number > kMuConditionLimit;
  return out;
}

namespace {

struct DeltaFits {
  double delta = 0;
  double free_coefficient = 0;
  double free_delta = 0;
  double residual = 0;
};

DeltaFits fit_delta(const MomentTable& table, double lead, int n_max, std::vector<int>& grid) {
  grid.clear();
  for (double x = 500; x < n_max; x *= std::pow(2.0, 0.25)) grid.push_back(static_cast<int>(std::lround(x)));
  grid.push_back(n_max);
  std::vector<std::vector<double>> fixed(2), free(4);
  std::vector<double> rest, raw;
  for (int n : grid) {
    const double x = n;
    const double value = static_cast<double>(table.value(n, 1));
    fixed[0].push_back(x);
    fixed[1].push_back(std::sqrt(x) * std::log(x));
    rest.push_back(value - lead * x * std::log(x));
    free[0].push_back(x * std::log(x));
    free[1].push_back(x);
    free[2].push_back(std::sqrt(x) * std::log(x));
    free[3].push_back(std::sqrt(x));
    raw.push_back(value);
  }
  const LeastSquaresFit a = least_squares(fixed, rest);
  const LeastSquaresFit b = least_squares(free, raw);
  return {a.coefficients[0], b.coefficients[0], b.coefficients[1], a.relative_residual};
}

}  // namespace

DeltaEstimate estimate_delta(const MomentTable& table, const FamilyConstants& constants) {
  require_power_toll(table.toll);
  if (table.variant != Variant::TwoSided || !is_half(table.toll.alpha)) {
    throw DomainError("estimate_delta needs a two-sided table with alpha = 1/2");
  }
  if (table.n_max < kMinDeltaFitN) {
    throw DomainError("estimate_delta needs n_max >= " + std::to_string(kMinDeltaFitN));
  }
  DeltaEstimate out;
  out.predicted_coefficient = constants.sigma / std::sqrt(2 * kPi);
  const DeltaFits full = fit_delta(table, out.predicted_coefficient, table.n_max, out.grid);
  std::vector<int> half_grid;
  const DeltaFits half = fit_delta(table, out.predicted_coefficient, table.n_max / 2, half_grid);
  out.delta = full.delta;
  out.delta_half = half.delta;
  out.error_bar = std::abs(full.delta - half.delta);
  out.free_coefficient = full.free_coefficient;
  out.free_delta = full.free_delta;
  out.relative_residual = full.residual;
  return out;
}

IndependenceCheck family_independence_check(const ConvergenceReport& a, const ConvergenceReport& b,
                                            int s) {
  if (a.variant != b.variant || a.alpha != b.alpha) {
    throw DomainError("family comparison needs the same variant and alpha");
  }
  IndependenceCheck out;
  out.s = s;
  for (const auto& ra : a.rows) {
    if (ra.s != s) continue;
    for (const auto& rb : b.rows) {
      if (rb.s == s && rb.n == ra.n) out.rows.push_back({ra.n, std::abs(ra.normalized - rb.normalized)});
    }
  }
  std::sort(out.rows.begin(), out.rows.end(), [](auto& x, auto& y) { return x.n < y.n; });
  if (out.rows.empty()) throw DomainError("the reports share no sizes for this s");
  out.strictly_decreasing = out.rows.size() >= 2;
  out.all_zero = true;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].difference != 0) out.all_zero = false;
    if (i > 0 && !(out.rows[i].difference < out.rows[i - 1].difference)) out.strictly_decreasing = false;
  }
  out.final_below_first = out.rows.back().difference < out.rows.front().difference;
  return out;
}

}  // namespace treecut
