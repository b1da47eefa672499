#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace alexinv {

/// Exact rational with arbitrary-precision numerator and positive denominator.
/// mpq_class keeps values canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// Parses "p", "-p" or "p/q". Throws InvalidArgument on malformed text or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

} // namespace alexinv
