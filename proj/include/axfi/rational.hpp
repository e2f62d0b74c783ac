#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace axfi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p", or a finite decimal such as "-0.25" into an exact
/// rational. Throws SchemaError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (always with a denominator, reduced, sign on p).
std::string to_string(const Rational& value);

std::string to_string(const BigInt& value);

/// Fixed-point rendering with round-half-even at `places` digits; trailing
/// zeros are dropped but at least one fractional digit is kept ("1.0").
std::string to_decimal(const Rational& value, int places = 6);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

BigInt factorial(unsigned n);

}  // namespace axfi
