#pragma once

#include "platoon/polynomial.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace platoon {

/// Cached long-double coefficients of a ratio of polynomials, for repeated
/// evaluation on the imaginary axis. Long double keeps the exponent range
/// needed by strongly frequency-scaled controllers.
class ResponseEvaluator {
 public:
  ResponseEvaluator() = default;
  template <class C>
  ResponseEvaluator(const Polynomial<C>& num, const Polynomial<C>& den) {
    for (const auto& c : num.coeffs()) num_.push_back(CoeffTraits<C>::to_ld(c));
    for (const auto& c : den.coeffs()) den_.push_back(CoeffTraits<C>::to_ld(c));
  }

  /// Throws PoleAtPoint when the denominator vanishes relative to its scale.
  [[nodiscard]] std::complex<double> operator()(std::complex<double> z) const;

  /// |f(j omega)|, or +inf at a pole.
  [[nodiscard]] double magnitude(double omega) const;
  /// ln |f(j omega)|; -inf at zeros, +inf at poles.
  [[nodiscard]] double log_magnitude(double omega) const;

 private:
  using Cld = std::complex<long double>;
  static std::pair<Cld, long double> horner(const std::vector<long double>& c, Cld z);

  std::vector<long double> num_;
  std::vector<long double> den_;
};

/// Ratio of two real polynomials.
///
/// Exact mode keeps the ratio fully reduced (gcd of numerator and
/// denominator is constant) with a monic denominator. Numeric mode only makes
/// the denominator monic; cancellation is explicit through rf_normalize.
template <class C>
class RationalFunction {
 public:
  using Poly = Polynomial<C>;

  RationalFunction() : num_(), den_(Poly::constant(C(1))) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }
  // NOLINTNEXTLINE(google-explicit-constructor)
  RationalFunction(const Poly& p) : num_(p), den_(Poly::constant(C(1))) {}

  static RationalFunction constant(const C& c) { return RationalFunction(Poly::constant(c)); }
  /// The indeterminate s.
  static RationalFunction s() { return RationalFunction(Poly::monomial(1)); }

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  /// deg den - deg num; negative for improper functions.
  [[nodiscard]] int relative_degree() const {
    return is_zero() ? std::numeric_limits<int>::max() : den_.degree() - num_.degree();
  }
  [[nodiscard]] bool is_proper() const { return relative_degree() >= 0; }
  [[nodiscard]] bool is_strictly_proper() const { return relative_degree() >= 1; }

  [[nodiscard]] ResponseEvaluator evaluator() const { return ResponseEvaluator(num_, den_); }
  [[nodiscard]] std::complex<double> evaluate(std::complex<double> z) const { return evaluator()(z); }

  /// f(gamma * s), re-canonicalized.
  [[nodiscard]] RationalFunction scaled(const C& gamma) const {
    return RationalFunction(num_.scaled(gamma), den_.scaled(gamma));
  }

  [[nodiscard]] RationalFunction pow(int k) const {
    if (k < 0) return RationalFunction(den_, num_).pow(-k);
    RationalFunction r = constant(C(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    if constexpr (CoeffTraits<C>::exact) {
      const Poly g = gcd(a.den_, b.den_);
      const Poly bd = b.den_.divmod(g).first;
      const Poly ad = a.den_.divmod(g).first;
      return RationalFunction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
    } else {
      return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
  }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_, Raw{}); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if constexpr (CoeffTraits<C>::exact) {
      // Cross-cancel first; the result is then already reduced.
      const Poly g1 = gcd(a.num_, b.den_);
      const Poly g2 = gcd(b.num_, a.den_);
      return RationalFunction(a.num_.divmod(g1).first * b.num_.divmod(g2).first,
                              a.den_.divmod(g2).first * b.den_.divmod(g1).first);
    } else {
      return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw ZeroDenominator("division by the zero rational function");
    return a * RationalFunction(b.den_, b.num_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Raw {};
  RationalFunction(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize() {
    if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(C(1));
      return;
    }
    if constexpr (CoeffTraits<C>::exact) {
      const Poly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
    const C lead = den_.leading();
    if (lead != C(1)) {
      num_ = (C(1) / lead) * num_;
      den_ = den_.monic();
    }
  }

  Poly num_;
  Poly den_;
};

using ExactRF = RationalFunction<Rational>;
using NumericRF = RationalFunction<double>;

/// Canonical ratio of num/den. Exact mode reduces by the polynomial gcd;
/// numeric mode cancels only root pairs closer than root_tol.
ExactRF rf_normalize(const ExactPolynomial& num, const ExactPolynomial& den);
NumericRF rf_normalize(const NumericPolynomial& num, const NumericPolynomial& den, double root_tol = 1e-9);

NumericRF to_numeric(const ExactRF& f);
ExactRF to_exact(const NumericRF& f);

/// f(gamma s). Throws NonPositiveParameter unless gamma > 0.
ExactRF scale_frequency(const ExactRF& f, const Rational& gamma);
ExactRF scale_frequency(const ExactRF& f, double gamma);
NumericRF scale_frequency(const NumericRF& f, double gamma);

/// s^k for any integer k.
ExactRF s_power(int k);

}  // namespace platoon
