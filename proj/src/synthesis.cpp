#include "platoon/synthesis.hpp"

#include "platoon/text_format.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace platoon::synthesis {

namespace {

void require_order(int m) {
  if (m < 1) throw NonPositiveParameter("plant order m must be at least 1");
}

void require_multiple_of_four(int m) {
  require_order(m);
  if (m % 4 != 0) throw InvalidRange("the shaped design needs m divisible by 4 (lift other orders)");
}

ExactPolynomial s_plus(const Rational& a) { return ExactPolynomial{a, Rational(1)}; }

// Largest omega in [ok, bad] (log-bisected) with |T| <= threshold.
double bisect_crossing(const ResponseEvaluator& t, double ok, double bad, double threshold) {
  while (std::fabs(std::log(bad / ok)) > 1e-10) {
    const double mid = std::sqrt(ok * bad);
    if (t.magnitude(mid) > threshold) {
      bad = mid;
    } else {
      ok = mid;
    }
  }
  return ok;
}

}  // namespace

YoulaData youla_coprime(int m) {
  require_order(m);
  const auto um = static_cast<unsigned>(m);
  const ExactPolynomial den = ExactPolynomial::linear_power(Rational(1), um);
  std::vector<Rational> x(um), y(um + 1);
  for (unsigned k = 0; k < um; ++k) x[k] = binomial(2 * um, k);
  for (unsigned l = um; l <= 2 * um; ++l) y[l - um] = binomial(2 * um, l);

  YoulaData d;
  d.m = m;
  d.N = ExactRF(ExactPolynomial::constant(Rational(1)), den);
  d.M = ExactRF(ExactPolynomial::monomial(um), den);
  d.X = ExactRF(ExactPolynomial(std::move(x)), den);
  d.Y = ExactRF(ExactPolynomial(std::move(y)), den);
  if (!(d.N * d.X + d.M * d.Y == ExactRF::constant(Rational(1)))) {
    throw std::logic_error("Bezout identity NX + MY = 1 failed");
  }
  return d;
}

ExactRF q1_shape(int m, const Rational& gamma_a, const Rational& gamma_b) {
  require_order(m);
  if (sgn(gamma_a) <= 0 || sgn(gamma_b) <= 0) throw NonPositiveParameter("shaping poles must be positive");
  const auto um = static_cast<unsigned>(m);
  return ExactRF(ExactPolynomial::linear_power(Rational(1), um),
                 s_plus(gamma_a) * ExactPolynomial::linear_power(gamma_b, um - 1));
}

ExactRF q1_shape(int m, double gamma_a, double gamma_b) {
  if (!(gamma_a > 0.0) || !(gamma_b > 0.0)) throw NonPositiveParameter("shaping poles must be positive");
  return q1_shape(m, exact_from_double(gamma_a), exact_from_double(gamma_b));
}

ExactRF candidate_controller(int m, const Rational& gamma_a, const Rational& gamma_b) {
  require_multiple_of_four(m);
  if (sgn(gamma_a) <= 0 || sgn(gamma_b) <= 0) throw NonPositiveParameter("shaping poles must be positive");
  // With X = x/(s+1)^m, Y = y/(s+1)^m and Q1 = (s+1)^m/q, the Youla formula
  // (X + MQ)/(Y - NQ) for Q = -X Q1 collapses to x (q - s^m) / (y q + x).
  const auto um = static_cast<unsigned>(m);
  std::vector<Rational> xc(um), yc(um + 1);
  for (unsigned k = 0; k < um; ++k) xc[k] = binomial(2 * um, k);
  for (unsigned l = um; l <= 2 * um; ++l) yc[l - um] = binomial(2 * um, l);
  const ExactPolynomial x(std::move(xc));
  const ExactPolynomial y(std::move(yc));
  const ExactPolynomial q = s_plus(gamma_a) * ExactPolynomial::linear_power(gamma_b, um - 1);
  const ExactPolynomial den = y * q + x;
  if (den.is_zero()) throw IllPosed("Y - NQ is identically zero");
  const ExactRF c(x * (q - ExactPolynomial::monomial(um)), den);
  if (!c.is_proper() || !internally_stabilises(s_power(-m), c)) {
    throw StabilityCheckFailed("candidate controller does not internally stabilise s^-" + std::to_string(m));
  }
  return c;
}

ExactRF candidate_controller(int m, double gamma_a, double gamma_b) {
  if (!(gamma_a > 0.0) || !(gamma_b > 0.0)) throw NonPositiveParameter("shaping poles must be positive");
  return candidate_controller(m, exact_from_double(gamma_a), exact_from_double(gamma_b));
}

ExactRF youla_complementary(int m, const Rational& gamma_a, const Rational& gamma_b) {
  const YoulaData d = youla_coprime(m);
  return d.N * d.X * (ExactRF::constant(Rational(1)) - d.M * q1_shape(m, gamma_a, gamma_b));
}

FrequencyGrid certification_grid(double gamma_min) {
  return FrequencyGrid::log_uniform(std::min(gamma_min, 1.0) * 1e-4, 1e4, 200);
}

Certificate certify_controller(const ExactRF& c, int m, double epsilon, const FrequencyGrid& grid) {
  require_order(m);
  if (!(epsilon > 0.0)) throw NonPositiveParameter("epsilon must be positive");
  if (!internally_stabilises(s_power(-m), c)) {
    throw StabilityCheckFailed("controller does not internally stabilise s^-" + std::to_string(m));
  }
  const ExactRF t = integrator_loop_t(c, m);
  const HinfNorm norm = hinf_norm(t, grid);
  Certificate cert;
  cert.epsilon = epsilon;
  cert.peak = norm.norm;
  if (norm.norm > 1.0 + epsilon) {
    throw PeakExceedsBudget("closed-loop peak " + std::to_string(norm.norm) + " exceeds 1 + " +
                            std::to_string(epsilon));
  }

  const ResponseEvaluator eval = t.evaluator();
  const auto& w = grid.omegas();
  const double threshold = 1.0 + kAmplificationTol;
  std::size_t first = w.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (eval.magnitude(w[k]) > threshold) {
      if (first == w.size()) first = k;
      last = k;
    }
  }
  if (first == w.size()) {
    cert.degenerate = true;
    cert.omega_low = 1.0;
    cert.omega_high = 1.0;
    return cert;
  }
  if (first == 0 || last + 1 == w.size()) {
    throw InvalidRange("amplification band reaches the edge of the certification grid");
  }
  cert.omega_low = bisect_crossing(eval, w[first - 1], w[first], threshold);
  cert.omega_high = bisect_crossing(eval, w[last + 1], w[last], threshold);
  return cert;
}

namespace {

/// 10^(-k/4) rounded to six significant digits, so the exact algebra stays small.
Rational scan_point(int k) { return parse_rational(fmt::format("{:.5e}", std::pow(10.0, -0.25 * k))); }

}  // namespace

SearchResult search_parameters(int m, double epsilon) {
  require_multiple_of_four(m);
  if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidRange("epsilon must lie in (0, 1]");
  SearchResult result;
  for (int i = 0; i <= 24; ++i) {
    const Rational exact_a = scan_point(i);
    const double gamma_a = exact_a.get_d();
    for (int j = 0; j <= 24; ++j) {
      const Rational exact_b = scan_point(i + j);
      const double gamma_b = exact_b.get_d();
      ++result.candidates_tried;
      try {
        ExactRF c = candidate_controller(m, exact_a, exact_b);
        Certificate cert = certify_controller(c, m, epsilon, certification_grid(gamma_b));
        cert.gamma_a = gamma_a;
        cert.gamma_b = gamma_b;
        result.gamma_a = gamma_a;
        result.gamma_b = gamma_b;
        result.controller = std::move(c);
        result.certificate = cert;
        return result;
      } catch (const PeakExceedsBudget&) {
      } catch (const StabilityCheckFailed&) {
      } catch (const InvalidRange&) {
      }
    }
  }
  throw SearchExhausted("no (gamma_a, gamma_b) in 10^[-6, 0] x 10^[-6, 0] certified with epsilon = " +
                        std::to_string(epsilon));
}

ExactRF lift_order(const ExactRF& c_bar, int l, int m) {
  require_order(m);
  if (l != 4 * ((m + 3) / 4)) throw InvalidRange("lifting needs l = 4 ceil(m/4)");
  if (!internally_stabilises(s_power(-l), c_bar)) {
    throw StabilityCheckFailed("base controller does not internally stabilise s^-" + std::to_string(l));
  }
  ExactRF lifted = s_power(m - l) * c_bar;
  if (!lifted.is_proper() || !internally_stabilises(s_power(-m), lifted)) {
    throw StabilityCheckFailed("lifted controller does not internally stabilise s^-" + std::to_string(m));
  }
  return lifted;
}

ControllerFamily scaled_family(const ExactRF& c, const Certificate& cert, int m, double omega_bw, int count) {
  require_order(m);
  if (!(omega_bw > 0.0)) throw NonPositiveParameter("bandwidth must be positive");
  if (count < 1 || count > kMaxFamilyCount) {
    throw InvalidRange("family size must lie in 1.." + std::to_string(kMaxFamilyCount));
  }
  ControllerFamily fam;
  fam.m = m;
  fam.base = c;
  fam.omega_bw = omega_bw;
  fam.base_certificate = cert;

  const Rational high = exact_from_double(cert.omega_high);
  const Rational ratio = high / exact_from_double(cert.omega_low);
  Rational gamma = high / exact_from_double(omega_bw);
  const FrequencyGrid above_bw = FrequencyGrid::log_uniform(omega_bw, omega_bw * 1e6, 200);
  for (int k = 0; k < count; ++k) {
    Rational gamma_pow_m = 1;
    for (int i = 0; i < m; ++i) gamma_pow_m *= gamma;
    ExactRF ck = ExactRF::constant(Rational(1 / gamma_pow_m)) * scale_frequency(c, gamma);
    if (!internally_stabilises(s_power(-m), ck)) {
      throw StabilityCheckFailed("family member " + std::to_string(k + 1) + " is not stabilising");
    }
    const ResponseEvaluator t = integrator_loop_t(ck, m).evaluator();
    for (double w : above_bw.omegas()) {
      if (t.magnitude(w) > 1.0 + kAmplificationTol) {
        throw BandwidthViolation("family member " + std::to_string(k + 1) + " exceeds 1 at omega = " +
                                 std::to_string(w));
      }
    }
    fam.controllers.push_back(std::move(ck));
    fam.gammas.push_back(gamma);
    gamma = gamma * ratio;
  }
  return fam;
}

FrequencyGrid family_grid(const ControllerFamily& family) {
  const auto& cert = family.base_certificate;
  if (cert.degenerate || family.gammas.empty()) {
    return FrequencyGrid::log_uniform(family.omega_bw * 1e-4, family.omega_bw * 1e4, 200);
  }
  const double low = cert.omega_low / to_long_double(family.gammas.back());
  const double high = cert.omega_high / to_long_double(family.gammas.front());
  return FrequencyGrid::log_uniform(low * 1e-3, std::max(high, family.omega_bw) * 1e3, 200);
}

ProductCheck family_product_check(const ControllerFamily& family, const FrequencyGrid& grid, double epsilon,
                                  std::optional<int> n) {
  const int count = n.value_or(static_cast<int>(family.controllers.size()));
  if (count < 0 || count > static_cast<int>(family.controllers.size())) {
    throw InvalidRange("product length exceeds family size");
  }
  std::vector<ResponseEvaluator> loops;
  for (int k = 0; k < count; ++k) {
    loops.push_back(integrator_loop_t(family.controllers[static_cast<std::size_t>(k)], family.m).evaluator());
  }
  ProductCheck out;
  double best = 0.0;
  if (!loops.empty()) best = -std::numeric_limits<double>::infinity();
  for (double w : grid.omegas()) {
    double acc = 0.0;
    for (const auto& t : loops) acc += t.log_magnitude(w);
    if (acc > best) {
      best = acc;
      out.argmax_omega = w;
    }
  }
  out.max_product = std::exp(best);
  out.pass = out.max_product <= 1.0 + epsilon + kProductTol;
  return out;
}

SynthesisResult synthesize(int m, double epsilon, double omega_bw, int count) {
  require_order(m);
  if (!(epsilon > 0.0)) throw NonPositiveParameter("epsilon must be positive");
  SynthesisResult r;
  r.m = m;
  r.epsilon = epsilon;
  ExactRF base;
  Certificate cert;
  if (m == 1) {
    base = ExactRF::constant(Rational(1));
    cert = certify_controller(base, m, epsilon, FrequencyGrid::default_sweep());
  } else {
    const int l = 4 * ((m + 3) / 4);
    r.lifted_from = l;
    SearchResult search = search_parameters(l, std::min(epsilon, 1.0));
    base = l == m ? search.controller : lift_order(search.controller, l, m);
    cert = certify_controller(base, m, epsilon, certification_grid(search.gamma_b));
    cert.gamma_a = search.gamma_a;
    cert.gamma_b = search.gamma_b;
    r.search = std::move(search);
  }
  r.family = scaled_family(base, cert, m, omega_bw, count);
  r.product = family_product_check(r.family, family_grid(r.family), epsilon);
  return r;
}

nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["epsilon"] = cert.epsilon;
  j["peak"] = cert.peak;
  j["omega_low"] = cert.omega_low;
  j["omega_high"] = cert.omega_high;
  j["gamma_a"] = cert.gamma_a ? nlohmann::ordered_json(*cert.gamma_a) : nlohmann::ordered_json(nullptr);
  j["gamma_b"] = cert.gamma_b ? nlohmann::ordered_json(*cert.gamma_b) : nlohmann::ordered_json(nullptr);
  j["degenerate"] = cert.degenerate;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.epsilon = j.at("epsilon").get<double>();
  c.peak = j.at("peak").get<double>();
  c.omega_low = j.at("omega_low").get<double>();
  c.omega_high = j.at("omega_high").get<double>();
  if (j.contains("gamma_a") && !j.at("gamma_a").is_null()) c.gamma_a = j.at("gamma_a").get<double>();
  if (j.contains("gamma_b") && !j.at("gamma_b").is_null()) c.gamma_b = j.at("gamma_b").get<double>();
  c.degenerate = j.value("degenerate", false);
  return c;
}

nlohmann::ordered_json family_to_json(const SynthesisResult& result) {
  const auto& fam = result.family;
  nlohmann::ordered_json j;
  j["schema"] = "family/1";
  j["m"] = result.m;
  j["epsilon"] = result.epsilon;
  j["omega_bw"] = fam.omega_bw;
  j["lifted_from"] = result.lifted_from;
  j["base_controller"] = to_json(fam.base);
  j["certificate"] = certificate_to_json(fam.base_certificate);
  auto& gammas = j["gammas"] = nlohmann::ordered_json::array();
  for (const auto& g : fam.gammas) gammas.push_back(to_string(g));
  auto& approx = j["gammas_approx"] = nlohmann::ordered_json::array();
  for (const auto& g : fam.gammas) approx.push_back(static_cast<double>(to_long_double(g)));
  auto& ctrls = j["controllers"] = nlohmann::ordered_json::array();
  for (const auto& c : fam.controllers) ctrls.push_back(to_json(c));
  j["product_check"] = {{"max_product", result.product.max_product},
                        {"argmax_omega", result.product.argmax_omega},
                        {"pass", result.product.pass}};
  return j;
}

ControllerFamily family_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "family/1") throw ParseError("expected a family/1 document");
  ControllerFamily fam;
  fam.m = j.at("m").get<int>();
  fam.omega_bw = j.at("omega_bw").get<double>();
  fam.base = rational_function_from_json(j.at("base_controller"));
  fam.base_certificate = certificate_from_json(j.at("certificate"));
  for (const auto& g : j.at("gammas")) fam.gammas.push_back(parse_rational(g.get<std::string>()));
  for (const auto& c : j.at("controllers")) fam.controllers.push_back(rational_function_from_json(c));
  if (fam.gammas.size() != fam.controllers.size()) throw ParseError("gammas and controllers differ in length");
  return fam;
}

}  // namespace platoon::synthesis
