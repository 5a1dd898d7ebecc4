#include <doctest.h>

#include <cmath>

#include "treecut/enumeration.hpp"
#include "treecut/error.hpp"
#include "treecut/moments.hpp"

using namespace treecut;

namespace {
const MomentOptions kExact{MomentMode::Rational, FloatPrecision::Double};
}

TEST_SUITE("exact_moments") {
  TEST_CASE("hand-unrolled values") {
    const WeightedCounts ordered = compute_counts(ordered_trees(), 10);
    const MomentTable one = one_sided_moments(ordered, power_toll(0), 3, 2, kExact);
    CHECK(one.exact_value(1, 1) == 1);
    CHECK(one.exact_value(2, 1) == 2);
    CHECK(one.exact_value(3, 1) == Rational(11, 4));
    // Y_3 = 2 w.p. 1/4 (root split off as a leaf) and 3 w.p. 3/4.
    CHECK(one.exact_value(3, 2) == Rational(1, 4) * 4 + Rational(3, 4) * 9);

    const WeightedCounts cayley = compute_counts(cayley_trees(), 10);
    const MomentTable two = two_sided_moments(cayley, power_toll(1), 3, 1, kExact);
    CHECK(two.exact_value(2, 1) == 4);
    CHECK(two.exact_value(3, 1) == 8);
    const MomentTable y = one_sided_moments(cayley, power_toll(0), 2, 2, kExact);
    CHECK(y.exact_value(2, 2) == 4);
  }

  TEST_CASE("boundary values and zeroth moments") {
    const WeightedCounts c = compute_counts(binary_trees(), 40);
    for (Variant variant : {Variant::OneSided, Variant::TwoSided}) {
      const MomentTable t = compute_moments(variant, c, power_toll(2), 40, 3, kExact);
      for (int n = 1; n <= 40; ++n) CHECK(t.exact_value(n, 0) == 1);
      for (int s = 0; s <= 3; ++s) CHECK(t.exact_value(1, s) == 1);
    }
  }

  TEST_CASE("two-sided alpha = 0 counts the edges") {
    for (const auto& spec : {cayley_trees(), binary_trees(), ordered_trees()}) {
      CAPTURE(describe(spec));
      const WeightedCounts c = compute_counts(spec, 60);
      const MomentTable cuts =
          two_sided_moments(c, power_toll(0, IsolatedVertexCost::Zero), 60, 3, kExact);
      const MomentTable full = two_sided_moments(c, power_toll(0), 60, 2, kExact);
      for (int n = 1; n <= 60; ++n) {
        CHECK(cuts.exact_value(n, 1) == n - 1);
        CHECK(cuts.exact_value(n, 2) == Rational((n - 1) * (n - 1)));
        CHECK(cuts.exact_value(n, 3) == Rational((n - 1) * (n - 1) * (n - 1)));
        // n - 1 cuts plus t_1 = 1 for each of the n isolated vertices.
        CHECK(full.exact_value(n, 1) == 2 * n - 1);
        CHECK(full.exact_value(n, 2) == Rational((2 * n - 1) * (2 * n - 1)));
      }
      const auto centered = shifted_moments_exact(cuts, [](int n) { return Rational(n - 1); }, 2);
      for (int n = 1; n <= 60; ++n) CHECK(centered[n] == 0);
    }
  }

  TEST_CASE("dynamic programming equals exhaustive enumeration") {
    for (const auto& spec : {ordered_trees(), cayley_trees(), binary_trees(),
                             make_family(FamilyKind::C, Rational(1), 0, Rational(2))}) {
      const WeightedCounts c = compute_counts(spec, 6);
      for (double alpha : {0.0, 1.0, 2.0}) {
        for (IsolatedVertexCost iso : {IsolatedVertexCost::Toll, IsolatedVertexCost::Zero}) {
          const TollSpec toll = power_toll(alpha, iso);
          for (Variant variant : {Variant::OneSided, Variant::TwoSided}) {
            const MomentTable t = compute_moments(variant, c, toll, 6, 3, kExact);
            for (int n = 1; n <= 6; ++n) {
              CAPTURE(describe(spec));
              CAPTURE(alpha);
              CAPTURE(n);
              const auto oracle = exhaustive_moments(spec, variant, toll, n, 3);
              for (int s = 0; s <= 3; ++s) CHECK(t.exact_value(n, s) == oracle[s]);
            }
          }
        }
      }
    }
  }

  TEST_CASE("explicit toll tables") {
    TollSpec toll;
    toll.table = {Rational(1, 2), Rational(3), Rational(5, 7), Rational(2), Rational(1, 3)};
    const WeightedCounts c = compute_counts(ordered_trees(), 5);
    for (Variant variant : {Variant::OneSided, Variant::TwoSided}) {
      const MomentTable t = compute_moments(variant, c, toll, 5, 2, kExact);
      for (int n = 1; n <= 5; ++n) {
        const auto oracle = exhaustive_moments(ordered_trees(), variant, toll, n, 2);
        for (int s = 0; s <= 2; ++s) CHECK(t.exact_value(n, s) == oracle[s]);
      }
    }
    const WeightedCounts longer = compute_counts(ordered_trees(), 6);
    CHECK_THROWS_AS(compute_moments(Variant::TwoSided, longer, toll, 6, 1), OutOfRange);
  }

  TEST_CASE("float mode agrees with rational mode") {
    const WeightedCounts c = compute_counts(ordered_trees(), 150);
    for (Variant variant : {Variant::OneSided, Variant::TwoSided}) {
      const MomentTable exact = compute_moments(variant, c, power_toll(1), 150, 3, kExact);
      for (FloatPrecision precision : {FloatPrecision::Double, FloatPrecision::Extended}) {
        const MomentTable f = compute_moments(variant, c, power_toll(1), 150, 3, {MomentMode::Float, precision});
        for (int n = 1; n <= 150; ++n) {
          for (int s = 1; s <= 3; ++s) {
            CHECK(static_cast<double>(f.value(n, s)) ==
                  doctest::Approx(exact.exact_value(n, s).get_d()).epsilon(1e-11));
          }
        }
      }
    }
  }

  TEST_CASE("symmetric fast path equals the direct sum") {
    const WeightedCounts c = compute_counts(binary_trees(), 80);
    MomentOptions direct = kExact;
    direct.symmetric_fast_path = false;
    const MomentTable fast = two_sided_moments(c, power_toll(2), 80, 4, kExact);
    const MomentTable slow = two_sided_moments(c, power_toll(2), 80, 4, direct);
    for (int n = 1; n <= 80; ++n) {
      for (int s = 0; s <= 4; ++s) CHECK(fast.exact_value(n, s) == slow.exact_value(n, s));
    }
    MomentOptions direct_float;
    direct_float.symmetric_fast_path = false;
    const MomentTable ff = two_sided_moments(c, power_toll(0.75), 80, 3);
    const MomentTable fs = two_sided_moments(c, power_toll(0.75), 80, 3, direct_float);
    for (int n = 1; n <= 80; ++n) {
      for (int s = 1; s <= 3; ++s) CHECK(ff.value(n, s) == doctest::Approx(fs.value(n, s)).epsilon(1e-13));
    }
  }

  TEST_CASE("ordering properties") {
    const WeightedCounts c = compute_counts(cayley_trees(), 200, 0);
    const std::vector<double> alphas = {0, 0.25, 0.5, 1, 1.5, 2};
    std::vector<MomentTable> two, one;
    for (double a : alphas) {
      two.push_back(two_sided_moments(c, power_toll(a), 200, 2));
      one.push_back(one_sided_moments(c, power_toll(a), 200, 2));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (int n = 1; n <= 200; ++n) {
        CHECK(two[i].value(n, 2) >= two[i].value(n, 1) * two[i].value(n, 1) * (1 - 1e-12));
        CHECK(one[i].value(n, 2) >= one[i].value(n, 1) * one[i].value(n, 1) * (1 - 1e-12));
        CHECK(two[i].value(n, 1) >= one[i].value(n, 1));
        if (i > 0) CHECK(two[i].value(n, 1) >= two[i - 1].value(n, 1));
      }
    }
  }

  TEST_CASE("shifted moments") {
    const WeightedCounts c = compute_counts(ordered_trees(), 20);
    const MomentTable t = one_sided_moments(c, power_toll(0), 20, 3, kExact);
    const auto raw = shifted_moments_exact(t, [](int) { return Rational(0); }, 3);
    for (int n = 1; n <= 20; ++n) CHECK(raw[n] == t.exact_value(n, 3));
    const auto var = shifted_moments_exact(t, [&](int n) { return t.exact_value(n, 1); }, 2);
    CHECK(var[3] == t.exact_value(3, 2) - Rational(121, 16));
    CHECK(var[3] == Rational(3, 16));
    const auto fvar = shifted_moments(t, [&](int n) { return t.value(n, 1); }, 2);
    CHECK(static_cast<double>(fvar[3]) == doctest::Approx(3.0 / 16));
  }

  TEST_CASE("mode preconditions") {
    const WeightedCounts c = compute_counts(ordered_trees(), 50, 10);
    CHECK_THROWS_AS(two_sided_moments(c, power_toll(0.5), 5, 1, kExact), DomainError);
    CHECK_THROWS_AS(two_sided_moments(c, power_toll(1), 20, 1, kExact), OutOfRange);
    CHECK_THROWS_AS(two_sided_moments(c, power_toll(1), 60, 1), OutOfRange);
    CHECK_THROWS_AS(two_sided_moments(c, power_toll(1), 10, 13), OutOfRange);
    CHECK_THROWS_AS(power_toll(-1), DomainError);
  }
}
