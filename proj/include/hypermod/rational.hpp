#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hypermod {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" (q > 0, gcd(|p|, q) = 1) or a bare integer "p".
/// Throws std::invalid_argument on anything else, including "1/0" and "2/4".
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& q);

}  // namespace hypermod
