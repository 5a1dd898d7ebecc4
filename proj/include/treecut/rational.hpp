#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treecut {

using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q", plain integers and finite decimals ("0.25"); the result is
// canonicalized. Throws ConfigError on malformed input.
Rational parse_rational(std::string_view text);

// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational rational_power(const Rational& base, unsigned exponent);

// ln|value| for a nonzero rational of arbitrary size.
double log_abs(const Rational& value);

long double to_long_double(const Rational& value);

}  // namespace treecut
