#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qlab {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

/// Parses "p" or "p/q" (optional sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace qlab
