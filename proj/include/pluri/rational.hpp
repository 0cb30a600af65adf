#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pluri {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Rounding { down, up, nearest };

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

// q^e for integer e; q must be non-zero when e < 0.
Rational pow(const Rational& q, long e);

// The exact k-th root of x >= 0 if x is a perfect k-th power.
std::optional<Integer> exact_root(const Integer& x, unsigned long k);

// Largest k such that x > 1 is a perfect k-th power (1 when it is none).
unsigned long perfect_power_degree(const Integer& x);

long to_long(const Integer& z);

// "7" or "-3/2".
std::string to_string(const Rational& q);

// Decimal rendering with `digits` fractional digits under the given rounding.
std::string to_decimal(const Rational& q, int digits, Rounding mode = Rounding::nearest);

// Parses "12", "-3/4" or a plain decimal such as "1.25".
Rational parse_rational(std::string_view text);

} // namespace pluri
