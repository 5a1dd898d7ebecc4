#pragma once

#include <string>
#include <string_view>

#include "treecut/rational.hpp"

namespace treecut {

// The three very simple families. Every random tree of these families keeps
// the property that cutting a uniform edge leaves two independent random trees
// of the same family.
//   A: Phi(t) = exp(alpha0 t)                        (Cayley trees for alpha0 = 1)
//   B: Phi(t) = (1 + alpha0 t / d)^d, d >= 2         (d-ary trees)
//   C: Phi(t) = (1 - beta t)^(-alpha0/beta),
//      beta = 2 alpha1 - alpha0 > 0                  (ordered trees for alpha0 = alpha1 = 1)
enum class FamilyKind { A, B, C };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view text);

struct FamilySpec {
  FamilyKind kind = FamilyKind::A;
  Rational alpha0{1};  // phi_1 / phi_0
  int d = 0;           // family B only
  Rational alpha1{0};  // phi_2 / phi_1, family C only
  // Splitting-probability constants: p_{n,k} is proportional to (a1 k + a0) T_k T_{n-k}.
  Rational a0{0};
  Rational a1{1};

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// Validates the constraint column and fills (a0, a1). Throws ConstraintViolation.
FamilySpec make_family(FamilyKind kind, const Rational& alpha0, int d = 0,
                       const Rational& alpha1 = Rational(0));

FamilySpec cayley_trees();
FamilySpec ordered_trees();
FamilySpec binary_trees();  // B with alpha0 = 2, d = 2: Phi(t) = (1 + t)^2

// k-th coefficient of Phi; phi_0 = 1 for every family and family B has
// phi_k = 0 for k > d.
Rational phi_coefficient(const FamilySpec& spec, unsigned k);

// Phi and its first two derivatives in double precision; t must lie inside the
// radius of convergence.
struct PhiValues {
  double value;
  double first;
  double second;
};
PhiValues evaluate_phi(const FamilySpec& spec, double t);

// Radius of convergence of Phi (infinity for A and B).
double phi_radius(const FamilySpec& spec);

// Singularity constants. tau is the root of t Phi'(t) = Phi(t); rho = tau /
// Phi(tau) is the dominant singularity of T(z); T_n ~ c rho^{-n} n^{-3/2}.
struct FamilyConstants {
  double tau = 0;
  double rho = 0;
  double b = 0;
  double c = 0;
  double sigma2 = 0;
  double sigma = 0;
};

// tau is taken from the closed form 1/a1; an independent bracketed root
// search on t Phi'(t) - Phi(t) must agree to `tolerance` (relative), otherwise
// RootMismatch is thrown.
FamilyConstants solve_constants(const FamilySpec& spec, double tolerance = 1e-12);

// Bisection on t Phi'(t) - Phi(t) over (0, R). Exposed for tests.
double numeric_tau(const FamilySpec& spec);

// Plain-text config block: one key=value per line (kind, alpha0, d, alpha1);
// blank lines and '#' comments are ignored.
FamilySpec parse_family_config(std::string_view text);
std::string format_family_config(const FamilySpec& spec);

// Short human-readable label such as "C(alpha0=1,alpha1=1)".
std::string describe(const FamilySpec& spec);

}  // namespace treecut
