#pragma once

#include "platoon/errors.hpp"
#include "platoon/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace platoon {

/// Real polynomial in s with ascending coefficients.
///
/// Canonical form strips trailing zero coefficients, so the zero polynomial
/// is the empty coefficient list and has degree -1.
template <class C>
class Polynomial {
 public:
  using Coeff = C;

  Polynomial() = default;
  explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<C> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const C& c) { return Polynomial(std::vector<C>{c}); }

  /// c * s^k
  static Polynomial monomial(std::size_t k, const C& c = C(1)) {
    std::vector<C> v(k + 1, C(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }

  /// (s + a)^k
  static Polynomial linear_power(const C& a, std::size_t k) {
    Polynomial base{a, C(1)};
    Polynomial r = constant(C(1));
    for (std::size_t i = 0; i < k; ++i) r = r * base;
    return r;
  }

  [[nodiscard]] const std::vector<C>& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const C& leading() const {
    if (is_zero()) throw ZeroPolynomial("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  [[nodiscard]] C coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : C(0); }

  /// Lowest power of s with a nonzero coefficient.
  [[nodiscard]] std::size_t valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!CoeffTraits<C>::is_zero(coeffs_[k])) return k;
    }
    throw ZeroPolynomial("valuation of the zero polynomial");
  }

  template <class Z>
  [[nodiscard]] Z evaluate(const Z& z) const {
    Z acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + Z(to_point(*it));
    return acc;
  }

  /// p(gamma * s)
  [[nodiscard]] Polynomial scaled(const C& gamma) const {
    std::vector<C> v(coeffs_);
    C factor(1);
    for (auto& c : v) {
      c = c * factor;
      factor = factor * gamma;
    }
    return Polynomial(std::move(v));
  }

  /// Divide by s^k; requires the k lowest coefficients to be zero.
  [[nodiscard]] Polynomial shift_down(std::size_t k) const {
    if (k == 0 || is_zero()) return *this;
    return Polynomial(std::vector<C>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
  }

  [[nodiscard]] Polynomial derivative() const {
    std::vector<C> v;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(coeffs_[k] * C(static_cast<long>(k)));
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> v(std::max(a.coeffs_.size(), b.coeffs_.size()), C(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] = v[k] + a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] = v[k] + b.coeffs_[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a) {
    std::vector<C> v(a.coeffs_);
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> v(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (CoeffTraits<C>::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const C& c, const Polynomial& p) {
    std::vector<C> v(p.coeffs_);
    for (auto& x : v) x = x * c;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  [[nodiscard]] Polynomial pow(unsigned k) const {
    Polynomial r = constant(C(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw ZeroDenominator("polynomial division by zero");
    if (degree() < divisor.degree()) return {Polynomial{}, *this};
    std::vector<C> rem(coeffs_);
    const std::size_t dd = divisor.coeffs_.size() - 1;
    std::vector<C> quot(rem.size() - dd, C(0));
    const C& lead = divisor.coeffs_.back();
    for (std::size_t k = rem.size(); k-- > dd;) {
      if (CoeffTraits<C>::is_zero(rem[k])) continue;
      C q = rem[k] / lead;
      quot[k - dd] = q;
      for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coeffs_[j];
      rem[k] = C(0);
    }
    rem.resize(dd);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Divide every coefficient by the leading coefficient.
  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return {};
    const C lead = leading();
    std::vector<C> v(coeffs_);
    for (auto& c : v) c = c / lead;
    return Polynomial(std::move(v));
  }

 private:
  static auto to_point(const C& c) {
    if constexpr (CoeffTraits<C>::exact) {
      return to_long_double(c);
    } else {
      return c;
    }
  }

  void trim() {
    while (!coeffs_.empty() && CoeffTraits<C>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

using ExactPolynomial = Polynomial<Rational>;
using NumericPolynomial = Polynomial<double>;

/// Monic gcd over Q (Euclid on monic remainders). Zero if both inputs are zero.
ExactPolynomial gcd(const ExactPolynomial& a, const ExactPolynomial& b);

/// Explicit conversion between coefficient modes.
NumericPolynomial to_numeric(const ExactPolynomial& p);
ExactPolynomial to_exact(const NumericPolynomial& p);

/// Roots of a floating polynomial via the companion-matrix eigenvalues.
std::vector<std::complex<double>> roots(const NumericPolynomial& p);

/// Real polynomial with the given leading coefficient and roots; complex
/// roots are expected in conjugate pairs.
NumericPolynomial from_roots(const std::vector<std::complex<double>>& roots, double leading);

/// Binomial coefficient as an exact integer.
Rational binomial(unsigned n, unsigned k);

}  // namespace platoon
