#include "platoon/text_format.hpp"

#include <cctype>
#include <climits>

namespace platoon {

std::string format_polynomial(const ExactPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    const bool negative = sgn(c[k]) < 0;
    const Rational mag = abs(c[k]);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += "s";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string format_rational_function(const ExactRF& f) {
  if (f.den().degree() == 0) return format_polynomial(f.num());
  return "(" + format_polynomial(f.num()) + ")/(" + format_polynomial(f.den()) + ")";
}

namespace {

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := ('+'|'-') unary | power
// power := primary ('^' ['-'] integer)?
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExactRF parse() {
    ExactRF r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactRF expr() {
    ExactRF acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  ExactRF term() {
    ExactRF acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        ExactRF d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  ExactRF unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  ExactRF power() {
    ExactRF base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4) fail("exponent too large");
    const int e = std::stoi(digits);
    if (negative && base.is_zero()) fail("division by zero");
    return base.pow(negative ? -e : e);
  }

  ExactRF primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      ExactRF inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (ch == 's') {
      ++pos_;
      return ExactRF::s();
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    fail("unexpected character");
  }

  ExactRF number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    return ExactRF::constant(parse_rational(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactRF parse_rational_function(std::string_view text) { return Parser(text).parse(); }

nlohmann::ordered_json coeffs_to_json(const ExactPolynomial& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
  return arr;
}

ExactPolynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("polynomial coefficients must be a JSON array");
  std::vector<Rational> v;
  for (const auto& c : j) {
    if (c.is_string()) {
      v.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      v.emplace_back(c.get<long>());
    } else {
      throw ParseError("coefficients must be exact strings or integers");
    }
  }
  return ExactPolynomial(std::move(v));
}

nlohmann::ordered_json to_json(const ExactRF& f) {
  return nlohmann::ordered_json{{"num", coeffs_to_json(f.num())}, {"den", coeffs_to_json(f.den())}};
}

ExactRF rational_function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw ParseError("rational function JSON needs 'num' and 'den'");
  }
  return ExactRF(polynomial_from_json(j.at("num")), polynomial_from_json(j.at("den")));
}

}  // namespace platoon
