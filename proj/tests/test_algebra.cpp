#include "platoon/text_format.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace platoon;
using platoon::testing::random_nonzero_poly;
using platoon::testing::random_poly;
using platoon::testing::random_rf;

namespace {

ExactPolynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return ExactPolynomial(std::move(v));
}

ExactRF F(const char* text) { return parse_rational_function(text); }

}  // namespace

TEST(Rational, ParsesExactDecimals) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25e-3"), Rational(-1, 800));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("2E2"), Rational(200));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  for (const char* bad : {"", "1/0", "abc", "1..2", "1/", "e5"}) {
    EXPECT_THROW((void)parse_rational(bad), Error) << bad;
  }
}

TEST(Rational, DoubleConversionIsExact) {
  const Rational r = exact_from_double(0.1);
  EXPECT_NE(r, Rational(1, 10));
  EXPECT_EQ(r.get_d(), 0.1);
  EXPECT_EQ(exact_from_double(-3.5), Rational(-7, 2));
  EXPECT_EQ(to_string(Rational(-7, 2)), "-7/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Rational, LongDoubleKeepsWideExponents) {
  Rational big(1);
  for (int i = 0; i < 400; ++i) big *= 10;
  const long double v = to_long_double(big);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(static_cast<double>(std::log10(v)), 400.0, 1e-9);
  EXPECT_NEAR(static_cast<double>(std::log10(to_long_double(1 / big))), -400.0, 1e-9);
}

TEST(Polynomial, BinomialSquare) { EXPECT_EQ(P({1, 1}) * P({1, 1}), P({1, 2, 1})); }

TEST(Polynomial, EighthPowerOfOnePlusS) {
  EXPECT_EQ(P({1, 1}).pow(8), P({1, 8, 28, 56, 70, 56, 28, 8, 1}));
  // Pascal's rule as an oracle for the binomial helper.
  std::vector<std::vector<long>> pascal{{1}};
  for (unsigned n = 1; n <= 32; ++n) {
    std::vector<long> row(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) row[k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    pascal.push_back(row);
  }
  for (unsigned n = 0; n <= 32; ++n) {
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), Rational(pascal[n][k]));
  }
}

TEST(Polynomial, SubtractionGivesCanonicalZero) {
  const ExactPolynomial p = P({3, 0, -2, 5});
  const ExactPolynomial z = p - p;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_TRUE(z.coeffs().empty());
  EXPECT_THROW((void)z.leading(), ZeroPolynomial);
  EXPECT_EQ(P({1, 2, 0, 0}).degree(), 1);
}

TEST(Polynomial, DivmodAndGcd) {
  const ExactPolynomial a = P({1, 1}) * P({2, 1}) * P({0, 1});
  const ExactPolynomial b = P({1, 1}) * P({3, 1}) * P({0, 1});
  EXPECT_EQ(gcd(a, b), P({0, 1, 1}));
  EXPECT_EQ(gcd(P({5}), a), P({1}));
  EXPECT_TRUE(gcd(ExactPolynomial{}, ExactPolynomial{}).is_zero());
  const auto [q, r] = P({1, 0, 0, 1}).divmod(P({1, 1}));
  EXPECT_EQ(q, P({1, -1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_THROW((void)a.divmod(ExactPolynomial{}), ZeroDenominator);
}

TEST(Polynomial, RandomDivmodReconstructs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const ExactPolynomial a = random_poly(rng, 7);
    const ExactPolynomial b = random_nonzero_poly(rng, 4);
    const auto [q, r] = a.divmod(b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
    const ExactPolynomial g = gcd(a, b);
    EXPECT_TRUE(a.divmod(g).second.is_zero());
    EXPECT_TRUE(b.divmod(g).second.is_zero());
  }
}

TEST(Polynomial, CompanionRootsRoundTrip) {
  const NumericPolynomial p{6.0, 11.0, 6.0, 1.0};
  auto r = roots(p);
  std::sort(r.begin(), r.end(), [](auto a, auto b) { return a.real() < b.real(); });
  ASSERT_EQ(r.size(), 3U);
  EXPECT_NEAR(r[0].real(), -3.0, 1e-10);
  EXPECT_NEAR(r[1].real(), -2.0, 1e-10);
  EXPECT_NEAR(r[2].real(), -1.0, 1e-10);
  const NumericPolynomial back = from_roots(r, 1.0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(back.coeff(k), p.coeff(k), 1e-9);
}

TEST(RationalFunction, NormalizeExamples) {
  EXPECT_EQ(rf_normalize(P({0, 1, 1}), P({0, 1})), ExactRF(P({1, 1})));
  const ExactRF f = rf_normalize(P({0, 1}) * P({1, 1}).pow(2), P({1, 1}).pow(3));
  EXPECT_EQ(f.num(), P({0, 1}));
  EXPECT_EQ(f.den(), P({1, 1}));
  EXPECT_EQ(rf_normalize(P({1}), P({1, 1})).den(), P({1, 1}));
  EXPECT_THROW((void)rf_normalize(P({1}), ExactPolynomial{}), ZeroDenominator);
  // Monic denominator.
  const ExactRF g(P({2}), P({4, 2}));
  EXPECT_EQ(g.num(), P({1}));
  EXPECT_EQ(g.den(), P({2, 1}));
}

TEST(RationalFunction, NumericNormalizeCancelsOnlyCloseRoots) {
  const NumericPolynomial num = from_roots({{-1.0, 0.0}, {-2.0, 0.0}}, 1.0);
  const NumericPolynomial den = from_roots({{-1.0, 0.0}, {-3.0, 0.0}}, 1.0);
  const NumericRF f = rf_normalize(num, den);
  EXPECT_EQ(f.num().degree(), 1);
  EXPECT_EQ(f.den().degree(), 1);
  EXPECT_NEAR(f.num().coeff(0), 2.0, 1e-9);
  EXPECT_NEAR(f.den().coeff(0), 3.0, 1e-9);

  const NumericPolynomial near = from_roots({{-1.0 - 1e-6, 0.0}}, 1.0);
  const NumericRF g = rf_normalize(near, from_roots({{-1.0, 0.0}}, 1.0));
  EXPECT_EQ(g.den().degree(), 1);
  // Numeric products never cancel implicitly.
  const NumericRF h = to_numeric(F("(s+1)/(s+2)")) * to_numeric(F("(s+2)/(s+1)"));
  EXPECT_EQ(h.den().degree(), 2);
}

TEST(RationalFunction, RandomFieldAxioms) {
  std::mt19937_64 rng(20240101);
  int checked = 0;
  for (int i = 0; i < 1200; ++i) {
    const ExactRF a = random_rf(rng);
    const ExactRF b = random_rf(rng);
    const ExactRF c = random_rf(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    if (!b.is_zero()) ASSERT_EQ((a / b) * b, a);
    // Canonical form: reduced, monic denominator.
    const ExactRF p = a * b + c;
    ASSERT_EQ(gcd(p.num(), p.den()).degree(), 0);
    ASSERT_EQ(p.den().leading(), Rational(1));
    ++checked;
  }
  EXPECT_GE(checked, 1000);
}

TEST(RationalFunction, EvaluationExamples) {
  const ExactRF f = F("(s+1)/(s^2+s+1)");
  const auto v = f.evaluate({0.0, 1.0});
  EXPECT_NEAR(v.real(), 1.0, 1e-15);
  EXPECT_NEAR(v.imag(), -1.0, 1e-15);
  EXPECT_NEAR(std::abs(v), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(F("1/(s+1)").evaluate(0.0), std::complex<double>(1.0, 0.0));
  EXPECT_THROW((void)F("1/s").evaluate(0.0), PoleAtPoint);
  EXPECT_EQ(F("1/s").evaluator().magnitude(0.0), std::numeric_limits<double>::infinity());
  EXPECT_EQ(F("s/(s+1)").evaluator().log_magnitude(0.0), -std::numeric_limits<double>::infinity());
}

TEST(RationalFunction, EvaluationMatchesDirectHorner) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> w(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const ExactRF f = random_rf(rng, 4);
    const std::complex<double> z(w(rng), w(rng));
    const auto want = platoon::testing::eval_direct(f, z);
    if (!std::isfinite(std::abs(want)) || std::abs(want) > 1e8) continue;
    std::complex<double> got;
    try {
      got = f.evaluate(z);
    } catch (const PoleAtPoint&) {
      continue;
    }
    EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(RationalFunction, PowersAndProperness) {
  const ExactRF s = ExactRF::s();
  EXPECT_EQ(s_power(-2), ExactRF(P({1}), P({0, 0, 1})));
  EXPECT_EQ(s_power(3), ExactRF(P({0, 0, 0, 1})));
  EXPECT_EQ(s.pow(-1) * s, ExactRF::constant(1));
  EXPECT_TRUE(F("s/(s+1)").is_proper());
  EXPECT_FALSE(F("s/(s+1)").is_strictly_proper());
  EXPECT_FALSE(F("1+s").is_proper());
  EXPECT_EQ(F("1/(s^2+1)").relative_degree(), 2);
  EXPECT_THROW((void)(F("1") / ExactRF{}), ZeroDenominator);
}

TEST(ScaleFrequency, Examples) {
  const ExactRF f = F("1/(s+1)");
  EXPECT_EQ(scale_frequency(f, Rational(2)), F("1/(2*s+1)"));
  EXPECT_EQ(scale_frequency(f, Rational(1)), f);
  EXPECT_THROW((void)scale_frequency(f, Rational(0)), NonPositiveParameter);
  EXPECT_THROW((void)scale_frequency(f, -1.0), NonPositiveParameter);
  EXPECT_THROW((void)scale_frequency(to_numeric(f), 0.0), NonPositiveParameter);
}

TEST(ScaleFrequency, CovarianceAtRandomPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const ExactRF f = random_rf(rng, 3);
    const double gamma = std::pow(10.0, lg(rng));
    const double w = std::pow(10.0, lg(rng));
    const double direct = f.evaluator().magnitude(gamma * w);
    if (!std::isfinite(direct) || direct > 1e6 || direct < 1e-6) continue;
    const double scaled = scale_frequency(f, gamma).evaluator().magnitude(w);
    EXPECT_NEAR(scaled, direct, 1e-12 * std::max(1.0, direct));
  }
}

TEST(TextFormat, FormatsAscending) {
  EXPECT_EQ(format_polynomial(P({1, -2, 0, 3})), "1 - 2*s + 3*s^3");
  EXPECT_EQ(format_polynomial(P({0, 1})), "s");
  EXPECT_EQ(format_polynomial(ExactPolynomial{}), "0");
  EXPECT_EQ(format_polynomial(P({-1, 0, -1})), "-1 - s^2");
  EXPECT_EQ(format_rational_function(F("s/(s+1)")), "(s)/(1 + s)");
  EXPECT_EQ(format_rational_function(F("1/2 + s")), "1/2 + s");
}

TEST(TextFormat, ParserPrecedence) {
  EXPECT_EQ(F("1+2*s^2"), ExactRF(P({1, 0, 2})));
  EXPECT_EQ(F("-s^2"), ExactRF(P({0, 0, -1})));
  EXPECT_EQ(F(" ( s + 1 ) ^ 2 "), ExactRF(P({1, 2, 1})));
  EXPECT_EQ(F("s^-2"), s_power(-2));
  EXPECT_EQ(F("1/s/s"), s_power(-2));
  EXPECT_EQ(F("2*s - 3*s + s"), ExactRF{});
  EXPECT_EQ(F("0.5*s"), ExactRF(ExactPolynomial{Rational(0), Rational(1, 2)}));
  for (const char* bad : {"", "(", "s+", "x", "1/0", "1/(s-s)", "s^", "s^1.5", "2 3", "0^-1"}) {
    EXPECT_THROW((void)F(bad), Error) << bad;
  }
}

TEST(TextFormat, RandomRoundTrips) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const ExactRF f = random_rf(rng, 5);
    EXPECT_EQ(parse_rational_function(format_rational_function(f)), f);
    const nlohmann::json j = nlohmann::json::parse(to_json(f).dump());
    EXPECT_EQ(rational_function_from_json(j), f);
  }
}

TEST(TextFormat, JsonErrors) {
  EXPECT_THROW((void)rational_function_from_json(nlohmann::json::parse(R"({"num":["1"]})")), ParseError);
  EXPECT_THROW((void)rational_function_from_json(nlohmann::json::parse(R"({"num":[1.5],"den":["1"]})")), ParseError);
  EXPECT_THROW((void)rational_function_from_json(nlohmann::json::parse(R"({"num":["1"],"den":[]})")),
               ZeroDenominator);
  EXPECT_EQ(rational_function_from_json(nlohmann::json::parse(R"({"num":[1, "1/3"],"den":["2"]})")),
            F("(1 + s/3)/2"));
}
