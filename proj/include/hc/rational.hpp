#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace hc {

/// Arbitrary-precision exact rational. Arithmetic results are canonical, but
/// the two-argument mpq_class constructor is not: use ratio() instead.
using Rational = mpq_class;

/// num/den in lowest terms; InputError when den is 0.
Rational ratio(long num, long den);

/// Parses "p", "p/q", or a finite decimal such as "-0.25"; throws InputError otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);
long double to_long_double(const Rational& value);

/// Exact value of a finite double (every double is a dyadic rational).
Rational from_double(double value);

Rational factorial(std::size_t n);

/// n! / (n - k)!  (falling factorial), zero when k > n.
Rational falling_factorial(std::size_t n, std::size_t k);

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, std::size_t exponent);

/// True when value is the square of a rational; stores the root in *root.
bool exact_sqrt(const Rational& value, Rational* root);

}  // namespace hc
