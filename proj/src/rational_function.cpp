#include "platoon/rational_function.hpp"

namespace platoon {

std::pair<ResponseEvaluator::Cld, long double> ResponseEvaluator::horner(const std::vector<long double>& c, Cld z) {
  Cld acc(0.0L, 0.0L);
  long double scale = 0.0L;
  const long double r = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z + Cld(*it, 0.0L);
    scale = scale * r + std::fabs(*it);
  }
  return {acc, scale};
}

std::complex<double> ResponseEvaluator::operator()(std::complex<double> z) const {
  const Cld zz(z.real(), z.imag());
  const auto [n, n_scale] = horner(num_, zz);
  const auto [d, d_scale] = horner(den_, zz);
  if (std::abs(d) <= 1e-13L * d_scale) throw PoleAtPoint("denominator vanishes at the evaluation point");
  const Cld v = n / d;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double ResponseEvaluator::magnitude(double omega) const {
  const double lm = log_magnitude(omega);
  return std::exp(lm);
}

double ResponseEvaluator::log_magnitude(double omega) const {
  const Cld z(0.0L, omega);
  const auto [n, n_scale] = horner(num_, z);
  const auto [d, d_scale] = horner(den_, z);
  if (std::abs(d) <= 1e-13L * d_scale) return std::numeric_limits<double>::infinity();
  const long double an = std::abs(n);
  if (an == 0.0L) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::log(an) - std::log(std::abs(d)));
}

ExactRF rf_normalize(const ExactPolynomial& num, const ExactPolynomial& den) { return ExactRF(num, den); }

NumericRF rf_normalize(const NumericPolynomial& num, const NumericPolynomial& den, double root_tol) {
  if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  if (num.is_zero() || num.degree() == 0 || den.degree() == 0) return NumericRF(num, den);
  auto nr = roots(num);
  auto dr = roots(den);
  std::vector<bool> used(dr.size(), false);
  std::vector<std::complex<double>> keep_num;
  bool cancelled = false;
  for (const auto& z : nr) {
    std::size_t best = dr.size();
    double best_dist = root_tol;
    for (std::size_t k = 0; k < dr.size(); ++k) {
      if (used[k]) continue;
      const double dist = std::abs(z - dr[k]);
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (best < dr.size()) {
      used[best] = true;
      cancelled = true;
    } else {
      keep_num.push_back(z);
    }
  }
  if (!cancelled) return NumericRF(num, den);
  std::vector<std::complex<double>> keep_den;
  for (std::size_t k = 0; k < dr.size(); ++k) {
    if (!used[k]) keep_den.push_back(dr[k]);
  }
  return NumericRF(from_roots(keep_num, num.leading()), from_roots(keep_den, den.leading()));
}

NumericRF to_numeric(const ExactRF& f) { return NumericRF(to_numeric(f.num()), to_numeric(f.den())); }

ExactRF to_exact(const NumericRF& f) { return ExactRF(to_exact(f.num()), to_exact(f.den())); }

ExactRF scale_frequency(const ExactRF& f, const Rational& gamma) {
  if (sgn(gamma) <= 0) throw NonPositiveParameter("frequency scale must be positive");
  return f.scaled(gamma);
}

ExactRF scale_frequency(const ExactRF& f, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw NonPositiveParameter("frequency scale must be positive");
  return f.scaled(exact_from_double(gamma));
}

NumericRF scale_frequency(const NumericRF& f, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw NonPositiveParameter("frequency scale must be positive");
  return f.scaled(gamma);
}

ExactRF s_power(int k) {
  if (k >= 0) return ExactRF(ExactPolynomial::monomial(static_cast<std::size_t>(k)));
  return ExactRF(ExactPolynomial::constant(Rational(1)), ExactPolynomial::monomial(static_cast<std::size_t>(-k)));
}

}  // namespace platoon
