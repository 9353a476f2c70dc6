#include "platoon/bidir.hpp"

#include "platoon/text_format.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <ostream>

namespace platoon::bidir {

namespace {

const ExactRF& one() {
  static const ExactRF v = ExactRF::constant(Rational(1));
  return v;
}

ExactRF s_plus_one() { return ExactRF(ExactPolynomial{Rational(1), Rational(1)}); }

void require_size(int n) {
  if (n < 1) throw InvalidRange("platoon length must be at least 1");
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one();
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RationalMatrix RationalMatrix::leading_block(std::size_t k) const {
  if (k > rows_ || k > cols_) throw DimensionMismatch("leading block larger than the matrix");
  RationalMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
  }
  return b;
}

std::size_t RationalMatrix::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.is_zero() ? 0 : 1;
  return n;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum of different shapes");
  RationalMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] + b.entries_[k];
  return r;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product with mismatched inner dimension");
  RationalMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ExactRF& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const ExactRF& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        r(i, j) = r(i, j) + aik * bkj;
      }
    }
  }
  return r;
}

RationalMatrix operator*(const ExactRF& f, const RationalMatrix& a) {
  RationalMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = f * a.entries_[k];
  return r;
}

LemmaStructures build_structures(int n) {
  require_size(n);
  const auto un = static_cast<std::size_t>(n);
  LemmaStructures st{RationalMatrix(un, un), RationalMatrix(un, un), RationalMatrix(un, un), RationalMatrix(un, un)};
  const ExactRF sp1 = s_plus_one();
  const ExactRF h_inner = sp1 / ExactRF(ExactPolynomial::monomial(2));
  const ExactRF h_last = one() / ExactRF::s();
  const ExactRF minus_one = ExactRF::constant(Rational(-1));
  for (std::size_t i = 0; i < un; ++i) {
    st.X(i, i) = one();
    st.H(i, i) = i + 1 == un ? h_last : h_inner;
    st.U(i, i) = sp1;
    st.L(i, i) = i == 0 ? ExactRF::s() : sp1;
    if (i + 1 < un) {
      st.X(i + 1, i) = minus_one;
      st.U(i, i + 1) = minus_one;
      st.L(i + 1, i) = minus_one;
    }
  }
  return st;
}

RationalMatrix return_difference(int n) {
  const LemmaStructures st = build_structures(n);
  return RationalMatrix::identity(static_cast<std::size_t>(n)) + st.X * st.H * st.X.transpose();
}

bool verify_factorization(int n) {
  const LemmaStructures st = build_structures(n);
  const RationalMatrix lhs = ExactRF(ExactPolynomial::monomial(2)) * return_difference(n);
  const RationalMatrix rhs = st.U * st.L;
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      // After clearing s^2 every entry must be a polynomial.
      if (lhs(i, j).den().degree() != 0) return false;
    }
  }
  return lhs == rhs;
}

RationalMatrix invert_bidiagonal(const RationalMatrix& t, Triangle shape) {
  const std::size_t n = t.rows();
  if (t.cols() != n) throw DimensionMismatch("bidiagonal inverse needs a square matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool band = i == j || (shape == Triangle::upper ? j == i + 1 : i == j + 1);
      if (!band && !t(i, j).is_zero()) throw InvalidRange("matrix is not bidiagonal in the stated shape");
    }
    if (t(i, i).is_zero()) throw SingularDiagonal("zero diagonal entry at " + std::to_string(i + 1));
  }
  RationalMatrix inv(n, n);
  if (shape == Triangle::upper) {
    // Column j: inv(j,j) = 1/t(j,j); inv(i,j) = -t(i,i+1) inv(i+1,j) / t(i,i).
    for (std::size_t j = 0; j < n; ++j) {
      inv(j, j) = one() / t(j, j);
      for (std::size_t i = j; i-- > 0;) inv(i, j) = -(t(i, i + 1) * inv(i + 1, j)) / t(i, i);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      inv(j, j) = one() / t(j, j);
      for (std::size_t i = j + 1; i < n; ++i) inv(i, j) = -(t(i, i - 1) * inv(i - 1, j)) / t(i, i);
    }
  }
  return inv;
}

RationalMatrix sensitivity_matrix(int n) {
  const LemmaStructures st = build_structures(n);
  const RationalMatrix l_inv = invert_bidiagonal(st.L, Triangle::lower);
  const RationalMatrix u_inv = invert_bidiagonal(st.U, Triangle::upper);
  return ExactRF(ExactPolynomial::monomial(2)) * (l_inv * u_inv);
}

bool invariance_check(int k, const std::vector<int>& ns) {
  if (k < 1) throw InvalidRange("block size must be at least 1");
  for (int n : ns) {
    if (n < k) throw InvalidRange("every platoon length must be at least the block size");
  }
  if (ns.empty()) return true;
  const auto uk = static_cast<std::size_t>(k);
  const RationalMatrix reference = sensitivity_matrix(ns.front()).leading_block(uk);
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (!(sensitivity_matrix(ns[i]).leading_block(uk) == reference)) return false;
  }
  return true;
}

RationalMatrix time_scale(const RationalMatrix& s, double t_const) {
  if (!(t_const > 0.0) || !std::isfinite(t_const)) throw NonPositiveParameter("time constant must be positive");
  const Rational gamma = Rational(1) / exact_from_double(t_const);
  RationalMatrix r(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) r(i, j) = scale_frequency(s(i, j), gamma);
  }
  return r;
}

BodeTable bode_table(const RationalMatrix& mtx, const FrequencyGrid& grid) {
  std::vector<ResponseEvaluator> evals;
  for (std::size_t i = 0; i < mtx.rows(); ++i) {
    for (std::size_t j = 0; j < mtx.cols(); ++j) {
      if (!is_stable(mtx(i, j))) {
        throw UnstableEntry(fmt::format("entry ({}, {}) is not stable and proper", i + 1, j + 1));
      }
      evals.push_back(mtx(i, j).evaluator());
    }
  }
  BodeTable table{grid, mtx.rows(), mtx.cols(), {}, true, 0.0};
  table.magnitudes.reserve(grid.size() * evals.size());
  for (double w : grid.omegas()) {
    const double bound = w / std::hypot(w, 1.0);
    for (const auto& e : evals) {
      const double mag = e.magnitude(w);
      table.magnitudes.push_back(mag);
      table.worst_excess = std::max(table.worst_excess, mag - bound);
      if (mag > bound + 1e-9) table.below_first_order_bound = false;
    }
  }
  return table;
}

void write_bode_csv(std::ostream& os, const BodeTable& table) {
  os << "omega,row,col,abs,abs_db\n";
  const auto& w = table.grid.omegas();
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = 0; i < table.rows; ++i) {
      for (std::size_t j = 0; j < table.cols; ++j) {
        const double a = table.at(k, i, j);
        os << fmt::format("{:.17g},{},{},{:.17g},{:.17g}\n", w[k], i + 1, j + 1, a, 20.0 * std::log10(a));
      }
    }
  }
}

nlohmann::ordered_json bode_report(const BodeTable& table, int n) {
  nlohmann::ordered_json j;
  j["schema"] = "bode/1";
  j["n"] = n;
  j["omega_min"] = table.grid.omega_min();
  j["omega_max"] = table.grid.omega_max();
  j["points_per_decade"] = table.grid.points_per_decade();
  j["samples"] = table.grid.size();
  j["rows"] = table.magnitudes.size();
  j["bound"] = "|jw/(jw+1)| + 1e-9";
  j["worst_excess"] = table.worst_excess;
  j["verdict"] = table.below_first_order_bound;
  return j;
}

nlohmann::ordered_json matrix_to_json(const RationalMatrix& mtx) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < mtx.rows(); ++i) {
    for (std::size_t j = 0; j < mtx.cols(); ++j) {
      nlohmann::ordered_json e;
      e["row"] = i + 1;
      e["col"] = j + 1;
      e["num"] = coeffs_to_json(mtx(i, j).num());
      e["den"] = coeffs_to_json(mtx(i, j).den());
      e["text"] = format_rational_function(mtx(i, j));
      arr.push_back(std::move(e));
    }
  }
  return arr;
}

}  // namespace platoon::bidir
