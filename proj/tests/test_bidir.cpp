#include "platoon/bidir.hpp"
#include "platoon/text_format.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace platoon;
using namespace platoon::bidir;

namespace {

ExactRF F(const char* text) { return parse_rational_function(text); }

RationalMatrix from_rows(const std::vector<std::vector<const char*>>& rows) {
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = F(rows[i][j]);
  }
  return m;
}

/// (I + X H X^T)(j w) assembled numerically from the loop functions.
Eigen::MatrixXcd return_difference_at(int n, double w) {
  const std::complex<double> s(0.0, w);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) x(i + 1, i) = -1.0;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = i + 1 == n ? 1.0 / s : (s + 1.0) / (s * s);
  return Eigen::MatrixXcd::Identity(n, n) + x * h * x.transpose();
}

}  // namespace

TEST(Structures, SmallCases) {
  const LemmaStructures one = build_structures(1);
  EXPECT_EQ(one.U(0, 0), F("s+1"));
  EXPECT_EQ(one.L(0, 0), F("s"));
  EXPECT_EQ(one.H(0, 0), F("1/s"));

  const LemmaStructures two = build_structures(2);
  EXPECT_EQ(two.X, from_rows({{"1", "0"}, {"-1", "1"}}));
  EXPECT_EQ(two.H, from_rows({{"(s+1)/s^2", "0"}, {"0", "1/s"}}));
  EXPECT_EQ(two.U, from_rows({{"s+1", "-1"}, {"0", "s+1"}}));
  EXPECT_EQ(two.L, from_rows({{"s", "0"}, {"-1", "s+1"}}));
  EXPECT_THROW((void)build_structures(0), InvalidRange);
}

TEST(Structures, BidiagonalNonzeroCounts) {
  for (int n = 1; n <= 30; ++n) {
    const LemmaStructures st = build_structures(n);
    EXPECT_EQ(st.U.nonzero_count(), static_cast<std::size_t>(2 * n - 1));
    EXPECT_EQ(st.L.nonzero_count(), static_cast<std::size_t>(2 * n - 1));
    EXPECT_EQ(st.X.nonzero_count(), static_cast<std::size_t>(2 * n - 1));
    EXPECT_EQ(st.H.nonzero_count(), static_cast<std::size_t>(n));
  }
}

TEST(Factorization, HandExpandedTwoByTwo) {
  const RationalMatrix rd = return_difference(2);
  EXPECT_EQ(rd(0, 0), F("(s^2+s+1)/s^2"));
  EXPECT_EQ(rd(0, 0) * F("s^2"), F("s*(s+1)+1"));
  EXPECT_EQ(return_difference(1)(0, 0), F("1 + 1/s"));
}

TEST(Factorization, HoldsUpToForty) {
  for (int n = 1; n <= 40; ++n) EXPECT_TRUE(verify_factorization(n)) << "n = " << n;
}

TEST(Inverse, TwoByTwoExamples) {
  const LemmaStructures st = build_structures(2);
  EXPECT_EQ(invert_bidiagonal(st.U, Triangle::upper), from_rows({{"1/(s+1)", "1/(s+1)^2"}, {"0", "1/(s+1)"}}));
  EXPECT_EQ(invert_bidiagonal(st.L, Triangle::lower),
            from_rows({{"1/s", "0"}, {"1/(s*(s+1))", "1/(s+1)"}}));
  const RationalMatrix d = from_rows({{"s+2", "0", "0"}, {"0", "3", "0"}, {"0", "0", "1/s"}});
  EXPECT_EQ(invert_bidiagonal(d, Triangle::upper), from_rows({{"1/(s+2)", "0", "0"}, {"0", "1/3", "0"}, {"0", "0", "s"}}));
  EXPECT_EQ(invert_bidiagonal(d, Triangle::lower), invert_bidiagonal(d, Triangle::upper));
}

TEST(Inverse, Errors) {
  EXPECT_THROW((void)invert_bidiagonal(from_rows({{"1", "0"}, {"0", "0"}}), Triangle::upper), SingularDiagonal);
  EXPECT_THROW((void)invert_bidiagonal(from_rows({{"1", "0"}, {"1", "1"}}), Triangle::upper), InvalidRange);
  EXPECT_THROW((void)invert_bidiagonal(RationalMatrix(2, 3), Triangle::upper), DimensionMismatch);
}

TEST(Inverse, ExactUpToForty) {
  for (int n : {1, 2, 7, 20, 40}) {
    const LemmaStructures st = build_structures(n);
    const auto id = RationalMatrix::identity(static_cast<std::size_t>(n));
    EXPECT_EQ(st.U * invert_bidiagonal(st.U, Triangle::upper), id) << n;
    EXPECT_EQ(st.L * invert_bidiagonal(st.L, Triangle::lower), id) << n;
  }
}

TEST(Sensitivity, SmallCases) {
  EXPECT_EQ(sensitivity_matrix(1), from_rows({{"s/(s+1)"}}));
  const RationalMatrix s2 = sensitivity_matrix(2);
  EXPECT_EQ(s2(0, 1), F("s/(s+1)^2"));
  EXPECT_EQ(s2(1, 1), F("s*(s^2+s+1)/(s+1)^3"));
  const double a = std::abs(s2(1, 1).evaluate({0.0, 1.0}));
  EXPECT_NEAR(a, 1.0 / std::pow(2.0, 1.5), 1e-15);
  EXPECT_LE(a, 1.0 / std::sqrt(2.0));
}

TEST(Sensitivity, InvertsReturnDifferenceExactly) {
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(return_difference(n) * sensitivity_matrix(n), RationalMatrix::identity(static_cast<std::size_t>(n)))
        << "n = " << n;
  }
}

TEST(Sensitivity, TopLeftEntryAndPoles) {
  const ExactPolynomial s_plus_one{Rational(1), Rational(1)};
  for (int n = 1; n <= 20; ++n) {
    const RationalMatrix s = sensitivity_matrix(n);
    EXPECT_EQ(s(0, 0), F("s/(s+1)"));
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        const auto& d = s(i, j).den();
        EXPECT_EQ(d, s_plus_one.pow(static_cast<unsigned>(d.degree()))) << n << " " << i << " " << j;
        EXPECT_TRUE(s(i, j).is_proper());
      }
    }
  }
}

TEST(Sensitivity, MatchesDenseComplexInverse) {
  const int n = 8;
  const RationalMatrix s = sensitivity_matrix(n);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lg(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = std::pow(10.0, lg(rng));
    const Eigen::MatrixXcd inv = return_difference_at(n, w).inverse();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto got = s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).evaluate({0.0, w});
        EXPECT_LE(std::abs(got - inv(i, j)), 1e-9 * std::abs(inv(i, j))) << "w " << w << " (" << i << "," << j << ")";
      }
    }
  }
}

TEST(Invariance, LeadingBlocksDoNotDependOnLength) {
  std::vector<int> all;
  for (int n = 1; n <= 20; ++n) all.push_back(n);
  EXPECT_TRUE(invariance_check(1, all));
  EXPECT_TRUE(invariance_check(2, std::vector<int>(all.begin() + 1, all.end())));
  EXPECT_TRUE(invariance_check(10, {10, 15, 20}));
  EXPECT_THROW((void)invariance_check(3, {2, 5}), InvalidRange);
  EXPECT_THROW((void)invariance_check(0, {2, 5}), InvalidRange);
}

TEST(Invariance, ReturnDifferenceBlocksDoDepend) {
  // The last loop function differs, so the corner of I + X H X^T moves with n.
  EXPECT_FALSE(return_difference(3).leading_block(3) == return_difference(4).leading_block(3));
}

TEST(TimeScale, Substitution) {
  const RationalMatrix s1 = sensitivity_matrix(1);
  EXPECT_EQ(time_scale(s1, 1.0), s1);
  EXPECT_EQ(time_scale(s1, 10.0)(0, 0), F("s/(s+10)"));
  EXPECT_THROW((void)time_scale(s1, 0.0), NonPositiveParameter);
  const RationalMatrix s3 = sensitivity_matrix(3);
  const RationalMatrix scaled = time_scale(s3, 2.5);
  for (double w : {0.01, 0.7, 3.0, 90.0}) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double want = s3(i, j).evaluator().magnitude(w / 2.5);
        EXPECT_NEAR(scaled(i, j).evaluator().magnitude(w), want, 1e-12 * std::max(1.0, want));
      }
    }
  }
}

TEST(Bode, TwentyVehiclesStayBelowFirstOrderBound) {
  const auto grid = FrequencyGrid::log_uniform(1e-3, 1e3, 100);
  const BodeTable t = bode_table(sensitivity_matrix(20), grid);
  EXPECT_TRUE(t.below_first_order_bound);
  EXPECT_LE(t.worst_excess, 1e-9);
  EXPECT_EQ(t.magnitudes.size(), grid.size() * 400);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = grid.omegas()[k];
    EXPECT_NEAR(t.at(k, 0, 0), w / std::hypot(w, 1.0), 1e-15);
  }
}

TEST(Bode, CsvAndReport) {
  const BodeTable t = bode_table(sensitivity_matrix(2), FrequencyGrid::log_uniform(1.0, 10.0, 1));
  std::ostringstream os;
  write_bode_csv(os, t);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "omega,row,col,abs,abs_db");
  std::getline(is, line);
  EXPECT_EQ(line.rfind("1,1,1,", 0), 0U) << line;
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 8);
  const auto report = bode_report(t, 2);
  EXPECT_EQ(report.at("schema"), "bode/1");
  EXPECT_EQ(report.at("verdict"), true);
}

TEST(Bode, RejectsUnstableEntries) {
  EXPECT_THROW((void)bode_table(from_rows({{"1/s"}}), FrequencyGrid::log_uniform(1.0, 10.0, 1)), UnstableEntry);
  const BodeTable t = bode_table(from_rows({{"2/(s+1)"}}), FrequencyGrid::log_uniform(1e-2, 1.0, 5));
  EXPECT_FALSE(t.below_first_order_bound);
}

TEST(Export, MatrixJson) {
  const auto j = matrix_to_json(sensitivity_matrix(2));
  ASSERT_EQ(j.size(), 4U);
  EXPECT_EQ(j[1].at("row"), 1);
  EXPECT_EQ(j[1].at("col"), 2);
  EXPECT_EQ(rational_function_from_json(nlohmann::json::parse(j[3].dump())), F("s*(s^2+s+1)/(s+1)^3"));
}
