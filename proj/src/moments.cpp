#include "treecut/moments.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "treecut/error.hpp"

namespace treecut {

std::string_view to_string(Variant variant) {
  return variant == Variant::OneSided ? "one" : "two";
}

Variant parse_variant(std::string_view text) {
  if (text == "one" || text == "one-sided") return Variant::OneSided;
  if (text == "two" || text == "two-sided") return Variant::TwoSided;
  throw ConfigError("unknown variant '" + std::string(text) + "' (expected one or two)");
}

bool TollSpec::is_exact() const {
  return !table.empty() || (alpha >= 0 && alpha == std::floor(alpha) && alpha <= 64);
}

Rational TollSpec::exact_toll(int n) const {
  if (!table.empty()) {
    if (n < 1 || n > static_cast<int>(table.size())) throw OutOfRange("toll table too short");
    return table[n - 1];
  }
  if (!is_exact()) throw DomainError("toll n^alpha is not rational for non-integer alpha");
  return rational_power(Rational(n), static_cast<unsigned>(alpha));
}

long double TollSpec::toll(int n) const {
  if (!table.empty()) return to_long_double(exact_toll(n));
  return std::pow(static_cast<long double>(n), static_cast<long double>(alpha));
}

Rational TollSpec::exact_isolated_cost() const {
  return isolated == IsolatedVertexCost::Toll ? exact_toll(1) : Rational(0);
}

long double TollSpec::isolated_cost() const {
  return isolated == IsolatedVertexCost::Toll ? toll(1) : 0.0L;
}

TollSpec power_toll(double alpha, IsolatedVertexCost isolated) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw DomainError("toll exponent must be >= 0");
  TollSpec toll;
  toll.alpha = alpha;
  toll.isolated = isolated;
  return toll;
}

namespace {

// Compensated sum for floating types, plain sum for rationals.
template <class T>
class Accumulator {
 public:
  void add(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
      const T y = x - carry_;
      const T t = sum_ + y;
      carry_ = (t - sum_) - y;
      sum_ = t;
    } else {
      sum_ += x;
    }
  }
  const T& value() const { return sum_; }

 private:
  T sum_{0};
  T carry_{0};
};

long factorial(int k) {
  long out = 1;
  for (int j = 2; j <= k; ++j) out *= j;
  return out;
}

template <class T>
struct Row;

template <>
struct Row<Rational> {
  static void fill(const WeightedCounts& c, int n, std::vector<Rational>& out) {
    fill_split_row_exact(c, n, out);
  }
  static Rational toll(const TollSpec& t, int n) { return t.exact_toll(n); }
  static Rational isolated(const TollSpec& t) { return t.exact_isolated_cost(); }
};

template <class Real>
struct Row {
  static void fill(const WeightedCounts& c, int n, std::vector<Real>& out) {
    fill_split_row<Real>(c, n, out);
  }
  static Real toll(const TollSpec& t, int n) { return static_cast<Real>(t.toll(n)); }
  static Real isolated(const TollSpec& t) { return static_cast<Real>(t.isolated_cost()); }
};

// mu[s][n]; returns the filled table.
template <class T>
std::vector<std::vector<T>> run_dp(Variant variant, const WeightedCounts& counts,
                                   const TollSpec& toll, int n_max, int s_max, bool fast_path) {
  std::vector<std::vector<T>> mu(s_max + 1, std::vector<T>(n_max + 1, T(0)));
  const T leaf = Row<T>::isolated(toll);
  {
    T power(1);
    for (int s = 0; s <= s_max; ++s) {
      mu[s][1] = power;
      power = power * leaf;
    }
  }
  std::vector<T> p;
  std::vector<T> toll_powers(s_max + 1);
  // pair_sum[a][b] (a <= b): S(a, b) + S(b, a), S(a, b) = sum_k p_k mu_k^a mu_{n-k}^b.
  std::vector<std::vector<T>> pair_sum(s_max + 1, std::vector<T>(s_max + 1, T(0)));
  std::vector<T> first_sum(s_max + 1);

  for (int n = 2; n <= n_max; ++n) {
    Row<T>::fill(counts, n, p);
    const T t_n = Row<T>::toll(toll, n);
    toll_powers[0] = T(1);
    for (int s = 1; s <= s_max; ++s) toll_powers[s] = toll_powers[s - 1] * t_n;

    if (variant == Variant::OneSided) {
      for (int j = 0; j <= s_max; ++j) {
        Accumulator<T> acc;
        for (int k = 1; k < n; ++k) acc.add(p[k] * mu[j][k]);
        first_sum[j] = acc.value();
      }
      for (int s = 0; s <= s_max; ++s) {
        Accumulator<T> acc;
        long binom = 1;  // C(s, j)
        for (int j = 0; j <= s; ++j) {
          acc.add(T(binom) * toll_powers[s - j] * first_sum[j]);
          binom = binom * (s - j) / (j + 1);
        }
        mu[s][n] = acc.value();
      }
      continue;
    }

    for (int a = 0; a <= s_max; ++a) {
      for (int b = a; a + b <= s_max; ++b) {
        Accumulator<T> acc;
        if (fast_path) {
          int k = 1;
          for (; 2 * k < n; ++k) {
            const T w = p[k] + p[n - k];
            if (a == b) {
              acc.add(w * (mu[a][k] * mu[a][n - k] * 2));
            } else {
              acc.add(w * (mu[a][k] * mu[b][n - k] + mu[b][k] * mu[a][n - k]));
            }
          }
          if (2 * k == n) acc.add(p[k] * mu[a][k] * mu[b][k] * 2);
        } else {
          for (int k = 1; k < n; ++k) {
            acc.add(p[k] * mu[a][k] * mu[b][n - k]);
            acc.add(p[k] * mu[b][k] * mu[a][n - k]);
          }
        }
        pair_sum[a][b] = acc.value();
      }
    }
    for (int s = 0; s <= s_max; ++s) {
      Accumulator<T> acc;
      for (int s1 = 0; s1 <= s; ++s1) {
        const int rest = s - s1;
        for (int a = 0; 2 * a <= rest; ++a) {
          const int b = rest - a;
          const long multinomial = factorial(s) / (factorial(s1) * factorial(a) * factorial(b));
          T term = T(multinomial) * toll_powers[s1] * pair_sum[a][b];
          if (a == b) term = term / 2;
          acc.add(term);
        }
      }
      mu[s][n] = acc.value();
    }
  }
  return mu;
}

void check_request(const WeightedCounts& counts, int n_max, int s_max) {
  if (n_max < 1 || n_max > counts.n_max) {
    throw OutOfRange("n_max " + std::to_string(n_max) + " not covered by counts (n_max " +
                     std::to_string(counts.n_max) + ")");
  }
  if (s_max < 1) throw OutOfRange("s_max must be at least 1");
  if (s_max > 12) throw OutOfRange("s_max above 12 is not supported");
}

}  // namespace

MomentTable compute_moments(Variant variant, const WeightedCounts& counts, const TollSpec& toll,
                            int n_max, int s_max, const MomentOptions& options) {
  check_request(counts, n_max, s_max);
  if (!toll.table.empty() && static_cast<int>(toll.table.size()) < n_max) {
    throw OutOfRange("toll table shorter than n_max");
  }
  MomentTable table;
  table.variant = variant;
  table.family = counts.family;
  table.toll = toll;
  table.n_max = n_max;
  table.s_max = s_max;
  table.mode = options.mode;
  const bool fast = options.symmetric_fast_path;

  if (options.mode == MomentMode::Rational) {
    if (!toll.is_exact()) throw DomainError("rational mode needs a rational toll (integer alpha or table)");
    if (n_max > counts.exact_max()) {
      throw OutOfRange("rational mode needs exact counts up to n = " + std::to_string(n_max) +
                       " (exact cutoff " + std::to_string(counts.exact_max()) + ")");
    }
    table.exact = run_dp<Rational>(variant, counts, toll, n_max, s_max, fast);
    table.values.assign(s_max + 1, std::vector<long double>(n_max + 1, 0.0L));
    for (int s = 0; s <= s_max; ++s) {
      for (int n = 1; n <= n_max; ++n) table.values[s][n] = to_long_double(table.exact[s][n]);
    }
    return table;
  }

  if (options.precision == FloatPrecision::Extended) {
    table.values = run_dp<long double>(variant, counts, toll, n_max, s_max, fast);
  } else {
    auto mu = run_dp<double>(variant, counts, toll, n_max, s_max, fast);
    table.values.assign(s_max + 1, std::vector<long double>(n_max + 1, 0.0L));
    for (int s = 0; s <= s_max; ++s) {
      for (int n = 1; n <= n_max; ++n) table.values[s][n] = mu[s][n];
    }
  }
  return table;
}

MomentTable one_sided_moments(const WeightedCounts& counts, const TollSpec& toll, int n_max,
                              int s_max, const MomentOptions& options) {
  return compute_moments(Variant::OneSided, counts, toll, n_max, s_max, options);
}

MomentTable two_sided_moments(const WeightedCounts& counts, const TollSpec& toll, int n_max,
                              int s_max, const MomentOptions& options) {
  return compute_moments(Variant::TwoSided, counts, toll, n_max, s_max, options);
}

std::vector<long double> shifted_moments(const MomentTable& table,
                                         const std::function<long double(int)>& shift, int s) {
  if (s < 0 || s > table.s_max) throw OutOfRange("moment order outside the table");
  std::vector<long double> out(table.n_max + 1, 0.0L);
  for (int n = 1; n <= table.n_max; ++n) {
    const long double c = -shift(n);
    long double sum = 0;
    long double binom = 1;
    for (int j = 0; j <= s; ++j) {
      sum += binom * std::pow(c, s - j) * table.values[j][n];
      binom = binom * (s - j) / (j + 1);
    }
    out[n] = sum;
  }
  return out;
}

std::vector<Rational> shifted_moments_exact(const MomentTable& table,
                                            const std::function<Rational(int)>& shift, int s) {
  if (!table.has_exact()) throw DomainError("table has no exact values");
  if (s < 0 || s > table.s_max) throw OutOfRange("moment order outside the table");
  std::vector<Rational> out(table.n_max + 1, Rational(0));
  for (int n = 1; n <= table.n_max; ++n) {
    const Rational c = -shift(n);
    Rational sum(0);
    long binom = 1;
    for (int j = 0; j <= s; ++j) {
      sum += binom * rational_power(c, static_cast<unsigned>(s - j)) * table.exact[j][n];
      binom = binom * (s - j) / (j + 1);
    }
    out[n] = sum;
  }
  return out;
}

}  // namespace treecut
