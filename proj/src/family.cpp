#include "treecut/family.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::A: return "A";
    case FamilyKind::B: return "B";
    case FamilyKind::C: return "C";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "A" || text == "a") return FamilyKind::A;
  if (text == "B" || text == "b") return FamilyKind::B;
  if (text == "C" || text == "c") return FamilyKind::C;
  throw ConfigError("unknown family kind '" + std::string(text) + "' (expected A, B or C)");
}

FamilySpec make_family(FamilyKind kind, const Rational& alpha0, int d, const Rational& alpha1) {
  if (alpha0 <= 0) throw ConstraintViolation("alpha0 must be positive");
  FamilySpec spec;
  spec.kind = kind;
  spec.alpha0 = alpha0;
  switch (kind) {
    case FamilyKind::A:
      spec.a1 = alpha0;
      spec.a0 = 0;
      break;
    case FamilyKind::B:
      if (d < 2) throw ConstraintViolation("family B requires d >= 2");
      spec.d = d;
      spec.a1 = alpha0 * (d - 1) / d;
      spec.a0 = alpha0 / d;
      break;
    case FamilyKind::C: {
      Rational beta = 2 * alpha1 - alpha0;
      if (beta <= 0) throw ConstraintViolation("family C requires 2 alpha1 - alpha0 > 0");
      spec.alpha1 = alpha1;
      spec.a1 = 2 * alpha1;
      spec.a0 = -beta;
      break;
    }
  }
  spec.a0.canonicalize();
  spec.a1.canonicalize();
  return spec;
}

FamilySpec cayley_trees() { return make_family(FamilyKind::A, 1); }
FamilySpec ordered_trees() { return make_family(FamilyKind::C, 1, 0, 1); }
FamilySpec binary_trees() { return make_family(FamilyKind::B, 2, 2); }

Rational phi_coefficient(const FamilySpec& spec, unsigned k) {
  Rational out(1);
  switch (spec.kind) {
    case FamilyKind::A:
      // alpha0^k / k!
      for (unsigned j = 1; j <= k; ++j) out = out * spec.alpha0 / j;
      break;
    case FamilyKind::B: {
      if (k > static_cast<unsigned>(spec.d)) return Rational(0);
      // C(d, k) (alpha0 / d)^k
      Rational step = spec.alpha0 / spec.d;
      for (unsigned j = 0; j < k; ++j) out = out * (spec.d - static_cast<int>(j)) / (j + 1) * step;
      break;
    }
    case FamilyKind::C: {
      // C(gamma + k - 1, k) beta^k, gamma = alpha0 / beta
      Rational beta = 2 * spec.alpha1 - spec.alpha0;
      Rational gamma = spec.alpha0 / beta;
      for (unsigned j = 0; j < k; ++j) out = out * (gamma + j) / (j + 1) * beta;
      break;
    }
  }
  out.canonicalize();
  return out;
}

double phi_radius(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::C) {
    return 1.0 / Rational(2 * spec.alpha1 - spec.alpha0).get_d();
  }
  return std::numeric_limits<double>::infinity();
}

PhiValues evaluate_phi(const FamilySpec& spec, double t) {
  const double a0 = spec.alpha0.get_d();
  switch (spec.kind) {
    case FamilyKind::A: {
      double e = std::exp(a0 * t);
      return {e, a0 * e, a0 * a0 * e};
    }
    case FamilyKind::B: {
      const double d = spec.d;
      const double base = 1.0 + a0 * t / d;
      return {std::pow(base, d), a0 * std::pow(base, d - 1),
              a0 * a0 * (d - 1) / d * std::pow(base, d - 2)};
    }
    case FamilyKind::C: {
      const double beta = Rational(2 * spec.alpha1 - spec.alpha0).get_d();
      const double gamma = a0 / beta;
      const double base = 1.0 - beta * t;
      return {std::pow(base, -gamma), gamma * beta * std::pow(base, -gamma - 1),
              gamma * (gamma + 1) * beta * beta * std::pow(base, -gamma - 2)};
    }
  }
  return {0, 0, 0};
}

double numeric_tau(const FamilySpec& spec) {
  auto f = [&](double t) {
    auto phi = evaluate_phi(spec, t);
    return t * phi.first - phi.value;
  };
  double lo = 0.0;  // f(0) = -1
  double hi = 1.0;
  const double radius = phi_radius(spec);
  if (std::isfinite(radius)) {
    hi = radius / 2;
    while (f(hi) <= 0) hi = (hi + radius) / 2;
  } else {
    while (f(hi) <= 0) hi *= 2;
  }
  for (int iter = 0; iter < 200 && hi - lo > 0; ++iter) {
    double mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return lo + (hi - lo) / 2;
}

FamilyConstants solve_constants(const FamilySpec& spec, double tolerance) {
  FamilyConstants k;
  k.tau = 1.0 / spec.a1.get_d();
  const double root = numeric_tau(spec);
  if (std::fabs(root - k.tau) > tolerance * std::max(1.0, k.tau) + 4 * std::numeric_limits<double>::epsilon() * k.tau) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "numeric tau " << root << " disagrees with closed form " << k.tau;
    throw RootMismatch(msg.str());
  }
  const auto phi = evaluate_phi(spec, k.tau);
  k.rho = k.tau / phi.value;
  k.b = phi.value * std::sqrt(2.0 / (k.tau * phi.second));
  k.c = k.b * std::sqrt(k.rho) / (2.0 * std::sqrt(M_PI));
  k.sigma2 = k.tau * k.tau * phi.second / phi.value;
  k.sigma = std::sqrt(k.sigma2);
  return k;
}

FamilySpec parse_family_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    if (key != "kind" && key != "alpha0" && key != "d" && key != "alpha1") {
      throw ConfigError("unknown config key '" + key + "'");
    }
    kv[key] = strip(line.substr(eq + 1));
  }
  if (!kv.count("kind")) throw ConfigError("config block is missing 'kind'");
  FamilyKind kind = parse_family_kind(kv["kind"]);
  Rational alpha0 = kv.count("alpha0") ? parse_rational(kv["alpha0"]) : Rational(1);
  int d = 0;
  if (kind == FamilyKind::B) {
    if (!kv.count("d")) throw ConfigError("family B needs 'd'");
    Rational dr = parse_rational(kv["d"]);
    if (!is_integer(dr)) throw ConfigError("d must be an integer");
    d = static_cast<int>(dr.get_num().get_si());
  }
  Rational alpha1(0);
  if (kind == FamilyKind::C) {
    if (!kv.count("alpha1")) throw ConfigError("family C needs 'alpha1'");
    alpha1 = parse_rational(kv["alpha1"]);
  }
  return make_family(kind, alpha0, d, alpha1);
}

std::string format_family_config(const FamilySpec& spec) {
  std::ostringstream out;
  out << "kind=" << to_string(spec.kind) << "\n";
  out << "alpha0=" << format_rational(spec.alpha0) << "\n";
  if (spec.kind == FamilyKind::B) out << "d=" << spec.d << "\n";
  if (spec.kind == FamilyKind::C) out << "alpha1=" << format_rational(spec.alpha1) << "\n";
  return out.str();
}

std::string describe(const FamilySpec& spec) {
  std::string out(to_string(spec.kind));
  out += "(alpha0=" + format_rational(spec.alpha0);
  if (spec.kind == FamilyKind::B) out += ",d=" + std::to_string(spec.d);
  if (spec.kind == FamilyKind::C) out += ",alpha1=" + format_rational(spec.alpha1);
  return out + ")";
}

}  // namespace treecut
