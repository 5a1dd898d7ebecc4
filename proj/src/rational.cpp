#include "treecut/rational.hpp"

#include <cmath>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ConfigError("malformed rational '" + std::string(text) + "'");
    }
    BigInt q(std::string(den), 10);
    if (q == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(num), 10), q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw ConfigError("malformed decimal '" + std::string(text) + "'");
    }
    BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    out = Rational(num, den);
  } else {
    if (!all_digits(s)) throw ConfigError("malformed number '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(s), 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

Rational rational_power(const Rational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Rational(num, den);  // already canonical: gcd(p^k, q^k) = 1
}

double log_abs(const Rational& value) {
  long num_exp = 0;
  long den_exp = 0;
  double num = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
  double den = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
  return std::log(std::fabs(num)) - std::log(den) +
         static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

long double to_long_double(const Rational& value) {
  long num_exp = 0;
  long den_exp = 0;
  // mpz_get_d_2exp truncates to 53 bits; that is enough for a double-accurate
  // quotient, which is all the float paths need.
  double num = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
  double den = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(num) / den, static_cast<int>(num_exp - den_exp));
}

}  // namespace treecut
