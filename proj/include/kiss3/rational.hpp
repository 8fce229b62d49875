#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kiss3 {

// Exact rational backed by GMP; arithmetic results are kept in lowest terms
// with a positive denominator.
using Rational = mpq_class;

// num/den in lowest terms. Throws DomainError on a zero denominator.
Rational make_rational(long num, long den);

// Parses "p", "p/q" or a plain decimal literal such as "-0.25".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Nearest doubles bracketing r: to_double_down(r) <= r <= to_double_up(r).
double to_double_down(const Rational& r);
double to_double_up(const Rational& r);
double to_double(const Rational& r);

// The double x as an exact rational (every finite double is dyadic).
Rational exact(double x);

int sign(const Rational& r);

}  // namespace kiss3
