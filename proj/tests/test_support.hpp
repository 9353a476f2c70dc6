#pragma once

#include "platoon/rational_function.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace platoon::testing {

inline ExactPolynomial random_poly(std::mt19937_64& rng, int max_degree, int coeff_range = 5) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> num(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> c;
  const int d = deg(rng);
  for (int k = 0; k <= d; ++k) c.emplace_back(num(rng), den(rng));
  for (auto& x : c) x.canonicalize();
  return ExactPolynomial(std::move(c));
}

inline ExactPolynomial random_nonzero_poly(std::mt19937_64& rng, int max_degree) {
  for (;;) {
    ExactPolynomial p = random_poly(rng, max_degree);
    if (!p.is_zero()) return p;
  }
}

inline ExactRF random_rf(std::mt19937_64& rng, int max_degree = 3) {
  return ExactRF(random_poly(rng, max_degree), random_nonzero_poly(rng, max_degree));
}

/// First `count` Maclaurin coefficients of num/den by power-series division.
inline std::vector<Rational> maclaurin(const ExactRF& f, std::size_t count) {
  const auto& n = f.num().coeffs();
  const auto& d = f.den().coeffs();
  std::vector<Rational> out;
  for (std::size_t k = 0; k < count; ++k) {
    Rational acc = k < n.size() ? n[k] : Rational(0);
    for (std::size_t i = 1; i <= k && i < d.size(); ++i) acc -= d[i] * out[k - i];
    out.push_back(acc / d[0]);
  }
  return out;
}

/// Direct double-precision evaluation of an exact function.
inline std::complex<double> eval_direct(const ExactRF& f, std::complex<double> z) {
  auto horner = [&](const ExactPolynomial& p) {
    std::complex<double> acc = 0.0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->get_d();
    return acc;
  };
  return horner(f.num()) / horner(f.den());
}

/// Eigenvalues of the companion matrix, computed independently of the library.
inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& ascending) {
  const int n = static_cast<int>(ascending.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -ascending[static_cast<std::size_t>(i)] / ascending.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<std::complex<double>> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i));
  return r;
}

}  // namespace platoon::testing
