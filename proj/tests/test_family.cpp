#include <doctest.h>

#include <cmath>

#include "treecut/error.hpp"
#include "treecut/family.hpp"

using namespace treecut;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("family") {
  TEST_CASE("make_family fills a0 and a1") {
    const FamilySpec a = make_family(FamilyKind::A, Rational(1));
    CHECK(a.a0 == 0);
    CHECK(a.a1 == 1);
    const FamilySpec c = ordered_trees();
    CHECK(c.a0 == -1);
    CHECK(c.a1 == 2);
    const FamilySpec b = make_family(FamilyKind::B, Rational(2), 2);
    CHECK(b.a0 == 1);
    CHECK(b.a1 == 1);
    const FamilySpec b3 = make_family(FamilyKind::B, Rational(3, 2), 3);
    CHECK(b3.a0 == Rational(1, 2));
    CHECK(b3.a1 == 1);
  }

  TEST_CASE("constraint violations") {
    CHECK_THROWS_AS(make_family(FamilyKind::A, Rational(0)), ConstraintViolation);
    CHECK_THROWS_AS(make_family(FamilyKind::A, Rational(-1)), ConstraintViolation);
    CHECK_THROWS_AS(make_family(FamilyKind::B, Rational(1), 1), ConstraintViolation);
    CHECK_THROWS_AS(make_family(FamilyKind::C, Rational(2), 0, Rational(1)), ConstraintViolation);
    CHECK_THROWS_AS(make_family(FamilyKind::C, Rational(1), 0, Rational(1, 3)), ConstraintViolation);
  }

  TEST_CASE("phi coefficients") {
    CHECK(phi_coefficient(ordered_trees(), 5) == 1);
    CHECK(phi_coefficient(cayley_trees(), 3) == Rational(1, 6));
    CHECK(phi_coefficient(binary_trees(), 1) == 2);
    CHECK(phi_coefficient(binary_trees(), 2) == 1);
    CHECK(phi_coefficient(binary_trees(), 3) == 0);
    // C with beta = 3, gamma = 1/3: phi_2 = C(gamma + 1, 2) beta^2 = (4/3)(1/3)/2 * 9 = 2.
    const FamilySpec c = make_family(FamilyKind::C, Rational(1), 0, Rational(2));
    CHECK(phi_coefficient(c, 1) == 1);
    CHECK(phi_coefficient(c, 2) == 2);
    for (const auto& spec : {cayley_trees(), binary_trees(), ordered_trees(), c}) {
      CHECK(phi_coefficient(spec, 0) == 1);
      // alpha0 = phi_1 / phi_0
      CHECK(phi_coefficient(spec, 1) == spec.alpha0);
    }
    // alpha1 = phi_2 / phi_1 for family C
    CHECK(phi_coefficient(c, 2) / phi_coefficient(c, 1) == c.alpha1);
  }

  TEST_CASE("constants of the reference families") {
    const FamilyConstants a = solve_constants(cayley_trees());
    CHECK(a.tau == doctest::Approx(1).epsilon(1e-14));
    CHECK(a.rho == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(a.sigma == doctest::Approx(1).epsilon(1e-14));
    const FamilyConstants c = solve_constants(ordered_trees());
    CHECK(c.tau == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.rho == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c.sigma2 == doctest::Approx(2).epsilon(1e-14));
    // Catalan: C_{n-1} ~ 4^{n-1} / (sqrt(pi) n^{3/2}), so c = 1 / (4 sqrt(pi)).
    CHECK(c.c == doctest::Approx(1 / (4 * std::sqrt(kPi))).epsilon(1e-13));
    const FamilyConstants b = solve_constants(binary_trees());
    CHECK(b.tau == doctest::Approx(1).epsilon(1e-14));
    CHECK(b.rho == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.sigma2 == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("identities over a parameter grid") {
    std::vector<FamilySpec> grid;
    for (const Rational& a0 : {Rational(1, 2), Rational(1), Rational(2)}) {
      grid.push_back(make_family(FamilyKind::A, a0));
      for (int d : {2, 3, 5}) grid.push_back(make_family(FamilyKind::B, a0, d));
      for (const Rational& beta : {Rational(1, 2), Rational(1), Rational(2)}) {
        grid.push_back(make_family(FamilyKind::C, a0, 0, (beta + a0) / 2));
      }
    }
    for (const auto& spec : grid) {
      CAPTURE(describe(spec));
      const FamilyConstants k = solve_constants(spec);
      CHECK(spec.a1.get_d() * k.tau == doctest::Approx(1).epsilon(1e-12));
      CHECK(numeric_tau(spec) == doctest::Approx(k.tau).epsilon(1e-12));
      const PhiValues phi = evaluate_phi(spec, k.tau);
      CHECK(phi.value > 0);
      CHECK(k.tau < phi_radius(spec));
      CHECK(k.rho * phi.value == doctest::Approx(k.tau).epsilon(1e-13));
      CHECK(k.c * k.sigma * 2 * std::sqrt(kPi) == doctest::Approx(std::sqrt(2.0) * k.tau).epsilon(1e-12));
      CHECK(k.sigma * k.sigma == doctest::Approx(k.sigma2).epsilon(1e-14));
    }
  }

  TEST_CASE("config block round trip") {
    const FamilySpec spec = make_family(FamilyKind::C, Rational(2), 0, Rational(3, 2));
    CHECK(parse_family_config(format_family_config(spec)) == spec);
    const FamilySpec b = parse_family_config("# binary\nkind=B\nalpha0=2\n\nd=2\n");
    CHECK(b == binary_trees());
    CHECK_THROWS_AS(parse_family_config("kind=Q\nalpha0=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_family_config("kind=A\nalpha0=x\n"), ConfigError);
  }
}
