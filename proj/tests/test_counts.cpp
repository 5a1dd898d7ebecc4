#include <doctest.h>

#include <cmath>

#include "treecut/counts.hpp"
#include "treecut/error.hpp"

using namespace treecut;

namespace {
std::vector<FamilySpec> families() {
  return {cayley_trees(), binary_trees(), ordered_trees(), make_family(FamilyKind::C, Rational(1), 0, Rational(2)),
          make_family(FamilyKind::B, Rational(1, 2), 5), make_family(FamilyKind::A, Rational(3, 2))};
}
}  // namespace

TEST_SUITE("counts") {
  TEST_CASE("small counts") {
    const WeightedCounts c = compute_counts(ordered_trees(), 5);
    CHECK(c.exact[1] == 1);
    CHECK(c.exact[2] == 1);
    CHECK(c.exact[3] == 2);
    CHECK(c.exact[4] == 5);
    CHECK(c.exact[5] == 14);
    const WeightedCounts a = compute_counts(cayley_trees(), 4);
    CHECK(a.exact[3] == Rational(3, 2));
    CHECK(a.exact[4] == Rational(8, 3));
    const WeightedCounts b = compute_counts(binary_trees(), 3);
    CHECK(b.exact[2] == 2);
    CHECK(b.exact[3] == 5);
  }

  TEST_CASE("recurrence equals Lagrange inversion") {
    for (const auto& spec : families()) {
      CAPTURE(describe(spec));
      const WeightedCounts c = compute_counts(spec, 30);
      const auto oracle = lagrange_counts(spec, 30);
      for (int n = 1; n <= 30; ++n) CHECK(c.exact[n] == oracle[n]);
    }
  }

  TEST_CASE("float values track the exact ones") {
    for (const auto& spec : families()) {
      CAPTURE(describe(spec));
      const WeightedCounts c = compute_counts(spec, 400);
      for (int n = 1; n <= 400; n += 7) {
        CHECK(c.log_values[n] == doctest::Approx(log_abs(c.exact[n])).epsilon(1e-12));
        const double rel = std::exp(c.log_values[n] - log_abs(c.exact[n])) - 1;
        CHECK(std::abs(rel) < 1e-10);
      }
    }
  }

  TEST_CASE("splitting laws") {
    const WeightedCounts c = compute_counts(ordered_trees(), 10);
    const SplitDistribution s3 = split_distribution(c, 3);
    CHECK((*s3.exact)[0] == Rational(1, 4));
    CHECK((*s3.exact)[1] == Rational(3, 4));
    const WeightedCounts a = compute_counts(cayley_trees(), 10);
    const SplitDistribution s4 = split_distribution(a, 4);
    CHECK((*s4.exact)[0] == Rational(3, 16));
    CHECK((*s4.exact)[1] == Rational(1, 4));
    CHECK((*s4.exact)[2] == Rational(9, 16));
    CHECK(s4[3] == doctest::Approx(9.0 / 16));
    const SplitDistribution sym = split_distribution(a, 4, true);
    CHECK((*sym.exact)[0] == Rational(3, 8));
    CHECK((*sym.exact)[1] == Rational(1, 4));
    CHECK((*sym.exact)[2] == Rational(3, 8));
    CHECK_THROWS_AS(split_distribution(a, 1), OutOfRange);
    CHECK_THROWS_AS(split_distribution(a, 11), OutOfRange);
  }

  TEST_CASE("normalization, nonnegativity and symmetry") {
    for (const auto& spec : families()) {
      CAPTURE(describe(spec));
      const WeightedCounts c = compute_counts(spec, 120);
      for (int n = 2; n <= 120; ++n) {
        for (bool symmetrized : {false, true}) {
          const SplitDistribution s = split_distribution(c, n, symmetrized);
          Rational total = 0;
          double float_total = 0;
          for (int k = 1; k < n; ++k) {
            const Rational& p = (*s.exact)[k - 1];
            CHECK(p >= 0);
            total += p;
            float_total += s[k];
            CHECK(s[k] == doctest::Approx(p.get_d()).epsilon(1e-12));
            if (symmetrized) CHECK(p == (*s.exact)[n - k - 1]);
          }
          CHECK(total == 1);
          CHECK(float_total == doctest::Approx(1).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("float path beyond the exact cutoff") {
    const WeightedCounts c = compute_counts(ordered_trees(), 3000, 50);
    CHECK(c.exact_max() == 50);
    // ln C_{n-1} from lgamma.
    const int n = 3000;
    const double log_catalan = std::lgamma(2.0 * (n - 1) + 1) - 2 * std::lgamma(double(n)) - std::log(double(n));
    CHECK(c.log_values[n] == doctest::Approx(log_catalan).epsilon(1e-12));
    const SplitDistribution s = split_distribution(c, n);
    CHECK_FALSE(s.exact.has_value());
    double total = 0;
    for (int k = 1; k < n; ++k) total += s[k];
    CHECK(total == doctest::Approx(1).epsilon(1e-12));
    // p_{n,k} = (2k - 1) C_{k-1} C_{n-k-1} / ((n - 1) C_{n-1})
    const int k = 1234;
    auto lc = [](int m) { return std::lgamma(2.0 * (m - 1) + 1) - 2 * std::lgamma(double(m)) - std::log(double(m)); };
    const double expected = std::exp(std::log(2.0 * k - 1) + lc(k) + lc(n - k) - std::log(n - 1.0) - lc(n));
    CHECK(s[k] == doctest::Approx(expected).epsilon(1e-10));
  }

  TEST_CASE("exact cutoff policy") {
    CHECK_THROWS_AS(compute_counts(ordered_trees(), 6000, 6000), OverflowPolicy);
    CHECK_THROWS_AS(compute_counts(ordered_trees(), 0), OutOfRange);
  }
}
