#pragma once

// Bidirectional platoon with a single retuned final vehicle.
//
// With loop functions h_k = (s+1)/s^2 (k < n) and h_n = 1/s, the return
// difference factors as I + X H X^T = U L / s^2 with U upper and L lower
// bidiagonal. The sensitivity S_n = s^2 L^-1 U^-1 then has leading blocks
// that do not depend on n.

#include "platoon/frequency.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <map>
#include <vector>

namespace platoon::bidir {

/// Dense matrix of exact rational functions, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const ExactRF& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  ExactRF& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  [[nodiscard]] RationalMatrix transpose() const;
  /// Leading k x k block.
  [[nodiscard]] RationalMatrix leading_block(std::size_t k) const;
  [[nodiscard]] std::size_t nonzero_count() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const ExactRF& f, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactRF> entries_;
};

struct LemmaStructures {
  RationalMatrix X;  ///< 1 on the diagonal, -1 on the subdiagonal
  RationalMatrix H;  ///< diag((s+1)/s^2, ..., (s+1)/s^2, 1/s)
  RationalMatrix U;  ///< s+1 on the diagonal, -1 on the superdiagonal
  RationalMatrix L;  ///< diag(s, s+1, ..., s+1), -1 on the subdiagonal
};

/// Throws InvalidRange for n < 1.
LemmaStructures build_structures(int n);

/// s^2 (I + X H X^T) == U L, entrywise and exactly.
bool verify_factorization(int n);

enum class Triangle { upper, lower };

/// Exact inverse of a bidiagonal matrix by back or forward substitution.
/// Throws SingularDiagonal on a zero diagonal entry and InvalidRange when
/// entries lie off the stated bidiagonal band.
RationalMatrix invert_bidiagonal(const RationalMatrix& t, Triangle shape);

/// S_n = s^2 L^-1 U^-1, entries fully reduced.
RationalMatrix sensitivity_matrix(int n);

/// I + X H X^T built directly, for cross-checks.
RationalMatrix return_difference(int n);

/// Leading k x k blocks of S_n agree exactly for every n in ns.
bool invariance_check(int k, const std::vector<int>& ns);

/// Entrywise s -> s / t_const. Throws NonPositiveParameter unless t_const > 0.
RationalMatrix time_scale(const RationalMatrix& s, double t_const);

/// Sampled |entry(j omega)| for every entry, omega-major then row then col.
struct BodeTable {
  FrequencyGrid grid;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> magnitudes;
  /// Every sample satisfies |entry| <= |j omega / (j omega + 1)| + 1e-9.
  bool below_first_order_bound = false;
  double worst_excess = 0.0;

  [[nodiscard]] double at(std::size_t w, std::size_t i, std::size_t j) const {
    return magnitudes[(w * rows + i) * cols + j];
  }
};

/// Throws UnstableEntry if any entry is improper or has a non-Hurwitz
/// denominator.
BodeTable bode_table(const RationalMatrix& mtx, const FrequencyGrid& grid);

/// Columns omega, row, col, abs, abs_db (1-based indices).
void write_bode_csv(std::ostream& os, const BodeTable& table);

/// {"schema": "bode/1", ...} sidecar with the verdict and grid parameters.
nlohmann::ordered_json bode_report(const BodeTable& table, int n);

/// Entries as {"row", "col", "num", "den"} objects with exact coefficients.
nlohmann::ordered_json matrix_to_json(const RationalMatrix& mtx);

}  // namespace platoon::bidir
