#pragma once

// Frequency-mistuned controller families for predecessor following.
//
// A single controller c for the plant s^-m is shaped through the Youla
// parametrisation so that its complementary sensitivity T = c/(s^m + c) peaks
// at no more than 1 + epsilon, and exceeds 1 only inside a band
// (omega_low, omega_high). Frequency-scaled copies of c are then placed so
// that these bands never overlap, which keeps the cascade product bounded by
// 1 + epsilon for every platoon length.

#include "platoon/frequency.hpp"

#include <nlohmann/json.hpp>

#include <optional>

namespace platoon::synthesis {

/// Samples with |T| above 1 + kAmplificationTol count as amplifying. The
/// margin absorbs rounding in |T| = 1 - O(omega^m) near the origin.
inline constexpr double kAmplificationTol = 1e-12;
/// Slack allowed on the grid maximum of the cascade product.
inline constexpr double kProductTol = 1e-6;
inline constexpr int kMaxFamilyCount = 25;

/// Coprime factorisation s^-m = N/M with NX + MY = 1, all four in RH-infinity.
struct YoulaData {
  ExactRF N, M, X, Y;
  int m = 0;
};

/// N = 1/(s+1)^m, M = s^m/(s+1)^m and X, Y from the binomial split of
/// (1+s)^2m. The Bezout identity is checked exactly before returning.
YoulaData youla_coprime(int m);

/// (s+1)^m / ((s+gamma_a)(s+gamma_b)^(m-1))
ExactRF q1_shape(int m, const Rational& gamma_a, const Rational& gamma_b);
ExactRF q1_shape(int m, double gamma_a, double gamma_b);

/// c = (X + MQ)/(Y - NQ) with Q = -X Q1. Requires 4 | m. Throws IllPosed
/// when Y - NQ vanishes and StabilityCheckFailed if c does not internally
/// stabilise s^-m.
ExactRF candidate_controller(int m, const Rational& gamma_a, const Rational& gamma_b);
ExactRF candidate_controller(int m, double gamma_a, double gamma_b);

/// N X (1 - M Q1): the closed loop reached along the Youla route.
ExactRF youla_complementary(int m, const Rational& gamma_a, const Rational& gamma_b);

struct Certificate {
  double epsilon = 0.0;
  double peak = 0.0;
  double omega_low = 0.0;
  double omega_high = 0.0;
  std::optional<double> gamma_a;
  std::optional<double> gamma_b;
  /// No amplification band at all; omega_low == omega_high == 1.
  bool degenerate = false;
};

/// Grid used when certifying candidates built with the given shaping
/// parameters: four decades below the smaller pole up to 1e4 rad/s.
FrequencyGrid certification_grid(double gamma_min);

/// Peak and amplification band of T = c/(s^m + c). omega_low and omega_high
/// bracket every grid sample with |T| > 1 and are refined by bisection to
/// 1e-10 relative width, always on the |T| <= 1 side.
Certificate certify_controller(const ExactRF& c, int m, double epsilon, const FrequencyGrid& grid);

struct SearchResult {
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  ExactRF controller;
  Certificate certificate;
  int candidates_tried = 0;
};

/// Lexicographic log scan: gamma_a = 10^(-i/4), gamma_b = gamma_a 10^(-j/4),
/// i, j = 0..24, each rounded to six significant digits. Returns the first candidate that certifies with budget
/// epsilon. Throws SearchExhausted when none does.
SearchResult search_parameters(int m, double epsilon);

/// s^(m - l) c_bar, with l = 4 ceil(m/4).
ExactRF lift_order(const ExactRF& c_bar, int l, int m);

struct ControllerFamily {
  int m = 0;
  ExactRF base;
  std::vector<ExactRF> controllers;
  std::vector<Rational> gammas;
  double omega_bw = 0.0;
  Certificate base_certificate;
};

/// c_k = gamma_k^-m c(gamma_k s) with gamma_1 = omega_high/omega_bw and
/// gamma_{k+1} = (omega_high/omega_low) gamma_k, all in exact arithmetic.
/// Every member is checked for internal stability and for |T_k| <= 1 above
/// omega_bw on a six-decade grid.
ControllerFamily scaled_family(const ExactRF& c, const Certificate& cert, int m, double omega_bw, int count);

struct ProductCheck {
  double max_product = 1.0;
  double argmax_omega = 0.0;
  bool pass = true;
};

/// Grid covering every amplification band of the family with three decades
/// of margin on both sides, 200 points per decade.
FrequencyGrid family_grid(const ControllerFamily& family);

/// Grid maximum of prod_{k<=n} |T_k(j omega)|; n defaults to the family size.
ProductCheck family_product_check(const ControllerFamily& family, const FrequencyGrid& grid, double epsilon,
                                  std::optional<int> n = std::nullopt);

struct SynthesisResult {
  int m = 0;
  int lifted_from = 0;  ///< l used for the base design, or 0 for the c = 1 path.
  double epsilon = 0.0;
  std::optional<SearchResult> search;
  ControllerFamily family;
  ProductCheck product;
};

/// Full pipeline: scan, certify, lift when 4 does not divide m, scale, check.
/// m = 1 uses c = 1, whose closed loop never exceeds 1.
SynthesisResult synthesize(int m, double epsilon, double omega_bw, int count);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
/// Versioned family document ("schema": "family/1").
nlohmann::ordered_json family_to_json(const SynthesisResult& result);
ControllerFamily family_from_json(const nlohmann::json& j);

}  // namespace platoon::synthesis
