#pragma once

#include "platoon/rational_function.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace platoon {

/// "c0 + c1*s + c2*s^2" with exact coefficients ("p" or "p/q").
std::string format_polynomial(const ExactPolynomial& p);
/// "(num)/(den)", or just the numerator when the denominator is 1.
std::string format_rational_function(const ExactRF& f);

/// Parses expressions in s with + - * / ^ and parentheses. Numbers are read
/// exactly, so "0.1" is 1/10. Throws ParseError or ZeroDenominator.
ExactRF parse_rational_function(std::string_view text);

/// {"num":[...],"den":[...]}, ascending exact coefficients as strings.
nlohmann::ordered_json to_json(const ExactRF& f);
ExactRF rational_function_from_json(const nlohmann::json& j);

nlohmann::ordered_json coeffs_to_json(const ExactPolynomial& p);
ExactPolynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace platoon
