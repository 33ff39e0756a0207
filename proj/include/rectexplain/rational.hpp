#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rectexplain {

// All solver arithmetic is exact rational; the representation equation and the
// zero-weight partitions hinge on exact zero tests, so floating point never
// enters a solver path.
using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "p" or "p/q" (decimal, optional leading '-') into a gcd-reduced
// rational with positive denominator. Returns nullopt on anything else,
// including q = 0.
std::optional<Rational> parse_rational(const std::string& text);

// Inverse of parse_rational: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace rectexplain
