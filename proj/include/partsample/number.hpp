#pragma once

#include <string>

#include <gmpxx.h>

namespace partsample {

using BigInt = mpz_class;

/// Exact fraction; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;

/// C(n, r) over arbitrary-precision integers; zero when r > n.
BigInt binomial(unsigned long n, unsigned long r);

/// "num/den", always with an explicit denominator ("1/1", "0/1").
std::string to_fraction_string(const Rational& q);

/// Fixed-point decimal with `digits` fractional digits, rounded half to even.
std::string to_decimal_string(const Rational& q, int digits);

/// Double approximation, for presentation and statistics only.
double to_double(const Rational& q);

Rational parse_fraction(const std::string& text);

}  // namespace partsample
