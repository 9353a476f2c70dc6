#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace platoon {

/// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rational = mpq_class;

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational exact_from_double(double value);

/// Nearest long double; keeps the wide exponent range for very large or
/// small rationals that would overflow a double.
long double to_long_double(const Rational& value);

/// "p" or "p/q" in base 10.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q", and decimal forms such as "-1.25e-3", all exactly.
Rational parse_rational(std::string_view text);

/// Coefficient-type traits shared by the exact and floating paths.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static long double to_ld(const Rational& c) { return to_long_double(c); }
};

template <>
struct CoeffTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double c) { return c == 0.0; }
  static long double to_ld(double c) { return static_cast<long double>(c); }
};

}  // namespace platoon
