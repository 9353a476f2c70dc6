#include "platoon/polynomial.hpp"

#include <Eigen/Dense>

namespace platoon {

ExactPolynomial gcd(const ExactPolynomial& a, const ExactPolynomial& b) {
  ExactPolynomial x = a.monic();
  ExactPolynomial y = b.monic();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return ExactPolynomial::constant(Rational(1));
    ExactPolynomial r = x.divmod(y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

NumericPolynomial to_numeric(const ExactPolynomial& p) {
  std::vector<double> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.get_d());
  return NumericPolynomial(std::move(v));
}

ExactPolynomial to_exact(const NumericPolynomial& p) {
  std::vector<Rational> v;
  v.reserve(p.coeffs().size());
  for (double c : p.coeffs()) v.push_back(exact_from_double(c));
  return ExactPolynomial(std::move(v));
}

std::vector<std::complex<double>> roots(const NumericPolynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  const int n = p.degree();
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  const auto& c = p.coeffs();
  // Roots at the origin are split off exactly.
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  out.assign(zeros, std::complex<double>(0.0, 0.0));
  const int m = n - static_cast<int>(zeros);
  if (m == 0) return out;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -c[zeros + static_cast<std::size_t>(i)] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  for (int i = 0; i < m; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

NumericPolynomial from_roots(const std::vector<std::complex<double>>& rts, double leading) {
  std::vector<std::complex<double>> acc{std::complex<double>(1.0, 0.0)};
  for (const auto& r : rts) {
    std::vector<std::complex<double>> next(acc.size() + 1, std::complex<double>(0.0, 0.0));
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= r * acc[k];
    }
    acc = std::move(next);
  }
  std::vector<double> v;
  v.reserve(acc.size());
  for (const auto& z : acc) v.push_back(leading * z.real());
  return NumericPolynomial(std::move(v));
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

}  // namespace platoon
