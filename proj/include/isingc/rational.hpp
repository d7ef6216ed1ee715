#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isingc {

/// Exact rational scalar used for weights and strengths throughout the compiler path.
using Rational = mpq_class;

/// Parses "3", "-1/2", "0.25" or "-1.5e-2" into an exact rational.
/// Throws isingc::Error(ErrorKind::parse) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// num/den in lowest terms; mpq_class(num, den) alone leaves the fraction unreduced.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace isingc
