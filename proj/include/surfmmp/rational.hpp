#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace surfmmp {

using Rational = mpq_class;

// Canonical text form: "p/q" with q > 1 coprime to p, or "p" for integers.
std::string to_string(const Rational& value);

// Accepts "p", "p/q" (optional sign on p); the result is normalized.
// Throws SurfaceError(Parse) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace surfmmp
