#include "platoon/cascade.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace platoon::cascade {

namespace {

void require_stabilising(const ExactRF& c, int m, std::size_t index) {
  if (!internally_stabilises(s_power(-m), c)) {
    throw StabilityCheckFailed("controller " + std::to_string(index + 1) + " does not internally stabilise s^-" +
                               std::to_string(m));
  }
}

// |P(j omega)|^2 as exact coefficients of a polynomial in w = omega^2.
ExactPolynomial squared_magnitude(const ExactPolynomial& p) {
  std::vector<Rational> mirrored(p.coeffs());
  for (std::size_t k = 1; k < mirrored.size(); k += 2) mirrored[k] = -mirrored[k];
  const ExactPolynomial prod = p * ExactPolynomial(std::move(mirrored));
  std::vector<Rational> w;
  for (std::size_t k = 0; k < prod.coeffs().size(); k += 2) {
    w.push_back((k / 2) % 2 == 0 ? Rational(prod.coeffs()[k]) : Rational(-prod.coeffs()[k]));
  }
  return ExactPolynomial(std::move(w));
}

std::vector<long double> to_ld(const ExactPolynomial& p) {
  std::vector<long double> out;
  for (const auto& c : p.coeffs()) out.push_back(to_long_double(c));
  return out;
}

long double horner(const std::vector<long double>& c, long double x) {
  long double acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// ln|T(j omega)| / omega^2 with T(0) = 1, written as
// 0.5 log1p(E(omega^2) / |D(j omega)|^2), E = |N|^2 - |D|^2. The low-order
// terms of E cancel exactly, so small omega keeps full relative accuracy.
class MiddletonIntegrand {
 public:
  explicit MiddletonIntegrand(const ExactRF& t) {
    const ExactPolynomial n2 = squared_magnitude(t.num());
    const ExactPolynomial d2 = squared_magnitude(t.den());
    const ExactPolynomial e = n2 - d2;
    excess_ = to_ld(e);
    num_sq_ = to_ld(n2);
    den_sq_ = to_ld(d2);
    if (!e.is_zero()) {
      const std::size_t j = e.valuation();
      lowest_power_ = static_cast<int>(j);
      lowest_coeff_ = to_long_double(e.coeffs()[j] / d2.coeffs()[0]);
    }
  }

  double operator()(double omega) const {
    const long double w = static_cast<long double>(omega) * omega;
    const long double d2 = horner(den_sq_, w);
    const long double ratio = horner(excess_, w) / d2;
    if (std::fabs(ratio) < 0.5L) return static_cast<double>(0.5L * std::log1p(ratio) / w);
    return static_cast<double>(0.5L * (std::log(horner(num_sq_, w)) - std::log(d2)) / w);
  }

  // Integral of the leading series term over (0, omega).
  [[nodiscard]] double head(double omega) const {
    if (lowest_power_ == 0) return 0.0;
    const int p = 2 * lowest_power_ - 1;
    return static_cast<double>(0.5L * lowest_coeff_ * std::pow(static_cast<long double>(omega), p) / p);
  }

 private:
  std::vector<long double> excess_;
  std::vector<long double> num_sq_;
  std::vector<long double> den_sq_;
  int lowest_power_ = 0;
  long double lowest_coeff_ = 0.0L;
};

template <class F>
double simpson_step(F& g, double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                    int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(g, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(g, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(F& g, double a, double b, double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(g, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

CascadeProfile cascade_gain(const std::vector<ExactRF>& controllers, int m, const FrequencyGrid& grid) {
  if (m < 1) throw NonPositiveParameter("plant order m must be at least 1");
  std::vector<ResponseEvaluator> loops;
  for (std::size_t k = 0; k < controllers.size(); ++k) {
    require_stabilising(controllers[k], m, k);
    loops.push_back(integrator_loop_t(controllers[k], m).evaluator());
  }
  CascadeProfile out{grid, {}, 1.0, 0.0};
  double best = -std::numeric_limits<double>::infinity();
  for (double w : grid.omegas()) {
    double acc = 0.0;
    for (const auto& t : loops) acc += t.log_magnitude(w);
    out.log_magnitudes.push_back(acc);
    if (acc > best) {
      best = acc;
      out.argmax_omega = w;
    }
  }
  out.peak = std::exp(best);
  return out;
}

void write_profile_csv(std::ostream& os, const CascadeProfile& profile) {
  os << "omega,abs,abs_db\n";
  const auto& w = profile.grid.omegas();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double lm = profile.log_magnitudes[k];
    os << fmt::format("{:.17g},{:.17g},{:.17g}\n", w[k], std::exp(lm), 20.0 * lm / std::numbers::ln10);
  }
}

MiddletonResult middleton_integral(const ExactRF& t, const QuadratureParams& params) {
  if (!is_stable(t)) throw StabilityCheckFailed("Middleton integral needs a stable proper T");
  if (t.is_zero() || t.num().coeff(0) / t.den().coeff(0) != 1) {
    throw DivergentAtOrigin("integrand diverges at the origin unless T(0) = 1");
  }
  if (!(params.omega_lo > 0.0) || !(params.omega_hi > params.omega_lo)) {
    throw InvalidRange("quadrature needs 0 < omega_lo < omega_hi");
  }
  const MiddletonIntegrand f(t);
  auto g = [&f](double u) {
    const double w = std::exp(u);
    return f(w) * w;
  };

  MiddletonResult r;
  r.omega_lo = params.omega_lo;
  r.omega_hi = params.omega_hi;
  for (int k = 0; k < 300 && std::fabs(f.head(r.omega_lo)) > params.head_tol; ++k) r.omega_lo /= 10.0;
  const double head = f.head(r.omega_lo);

  const double ulo = std::log(r.omega_lo);
  const double uhi = std::log(r.omega_hi);
  const int decades = std::max(1, static_cast<int>(std::ceil((uhi - ulo) / std::numbers::ln10 - 1e-9)));
  const double step = (uhi - ulo) / decades;
  double body = 0.0;
  for (int d = 0; d < decades; ++d) {
    body += adaptive_simpson(g, ulo + d * step, ulo + (d + 1) * step, params.tol_per_decade, params.max_depth);
  }

  // |T| ~ C omega^-r beyond omega_hi.
  const int rel = t.relative_degree();
  const double ln_t_hi = f(r.omega_hi) * r.omega_hi * r.omega_hi;
  const double tail = (ln_t_hi - rel) / r.omega_hi;

  r.value = head + body + tail;
  r.truncation_bound = std::fabs(head) + std::fabs(tail) + decades * params.tol_per_decade;
  return r;
}

GrowthTable homogeneous_growth(const ExactRF& c, int m, int n_max) {
  if (m < 1) throw NonPositiveParameter("plant order m must be at least 1");
  if (n_max < 1) throw InvalidRange("n_max must be at least 1");
  require_stabilising(c, m, 0);
  const HinfNorm norm = hinf_norm(integrator_loop_t(c, m));
  GrowthTable table;
  table.peak = norm.norm;
  table.omega0 = norm.argmax_omega;
  table.exponential_growth = norm.norm > 1.0 + 1e-12;
  for (int n = 1; n <= n_max; ++n) table.rows.push_back({n, std::pow(norm.norm, n)});
  return table;
}

double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) + trial) + index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

MistuneReport pd_mistune_experiment(int n, double k_min, double k_max, int trials, std::uint64_t seed,
                                    const FrequencyGrid& grid) {
  if (n < 1 || trials < 1) throw InvalidRange("n and trials must be at least 1");
  if (!(k_min > 0.0) || !(k_max >= k_min) || !std::isfinite(k_max)) {
    throw InvalidRange("PD gains need 0 < k_min <= k_max");
  }
  MistuneReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.k_min = k_min;
  report.k_max = k_max;
  std::vector<double> peaks;
  for (int t = 0; t < trials; ++t) {
    std::vector<ExactRF> controllers;
    for (int k = 0; k < n; ++k) {
      const double u = counter_uniform(seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k));
      const double gain = k_min + u * (k_max - k_min);
      controllers.emplace_back(ExactPolynomial{Rational(1), exact_from_double(gain)});
    }
    const CascadeProfile profile = cascade_gain(controllers, 2, grid);
    report.results.push_back({t, profile.peak, profile.argmax_omega});
    peaks.push_back(profile.peak);
  }
  report.median_peak = median_of(peaks);
  report.max_peak = *std::max_element(peaks.begin(), peaks.end());
  return report;
}

void write_mistune_csv(std::ostream& os, const MistuneReport& report) {
  os << "trial,peak,argmax_omega\n";
  for (const auto& r : report.results) os << fmt::format("{},{:.17g},{:.17g}\n", r.trial, r.peak, r.argmax_omega);
}

}  // namespace platoon::cascade
