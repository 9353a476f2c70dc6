#include "platoon/rational.hpp"

#include "platoon/errors.hpp"

#include <cctype>
#include <cmath>

namespace platoon {

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) {
    throw InvalidRange("cannot convert a non-finite double to an exact rational");
  }
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

long double to_long_double(const Rational& value) {
  if (sgn(value) == 0) return 0.0L;
  signed long num_exp = 0;
  signed long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
  const long double mant = static_cast<long double>(num_mant) / static_cast<long double>(den_mant);
  return std::ldexp(mant, static_cast<int>(num_exp - den_exp));
}

std::string to_string(const Rational& value) { return value.get_str(10); }

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("empty integer in '" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError("invalid number '" + std::string(whole) + "'");
    }
  }
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty number");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational result;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(s.substr(0, slash), text);
    const mpz_class den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ZeroDenominator("zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      const mpz_class ev = parse_integer(exp_part, text);
      if (!ev.fits_slong_p() || abs(ev) > 100000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
      exponent = exp_negative ? -ev.get_si() : ev.get_si();
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      const std::string_view int_part = s.substr(0, dot);
      const std::string_view frac_part = s.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw ParseError("invalid number '" + std::string(text) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      digits = std::string(s);
    }
    const mpz_class mant = parse_integer(digits, text);
    const long shift = exponent - frac_len;
    if (shift >= 0) {
      result = Rational(mant * pow10(static_cast<unsigned long>(shift)));
    } else {
      result = Rational(mant, pow10(static_cast<unsigned long>(-shift)));
      result.canonicalize();
    }
  }
  return negative ? Rational(-result) : result;
}

}  // namespace platoon
