#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace augsos {

/// Exact scalar. mpq_class keeps values canonical (reduced, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" or "-p/q" (with optional leading '+').
/// Throws Error(Parse) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

/// Best rational approximation with denominator <= bound (continued fractions).
Rational approximate(double value, const mpz_class& denominator_bound);

}  // namespace augsos
