#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace iet {

/// Exact rational number. GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Always "p/q", including q == 1.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", and plain decimals such as "-0.125".
/// Throws Error(SyntaxError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace iet
