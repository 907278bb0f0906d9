#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace courant {

/// Arbitrary-precision exact rational. All coefficients in the engine use it.
using Rational = mpq_class;

/// Canonical rendering: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace courant
