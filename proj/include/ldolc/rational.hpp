#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ldolc {

/// Exact rational scalar used by every computation in the library.
using Rational = mpq_class;

/// Parses "num/den", an integer, or a decimal with optional exponent
/// ("0.125", "-3.5e-2", "1e-6") into an exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical form: "n" for integers, "num/den" otherwise.
std::string to_string(const Rational& value);

/// Lossy conversion, for diagnostics only.
double to_double(const Rational& value);

Rational abs(const Rational& value);
Rational pow(const Rational& base, std::size_t exponent);

inline int sign(const Rational& value) { return sgn(value); }

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace ldolc
