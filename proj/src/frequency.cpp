#include "platoon/frequency.hpp"

#include <cmath>
#include <limits>

namespace platoon {

FrequencyGrid FrequencyGrid::log_uniform(double omega_min, double omega_max, int points_per_decade) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max)) {
    throw InvalidRange("frequency grid needs 0 < omega_min < omega_max");
  }
  if (points_per_decade < 1) throw InvalidRange("frequency grid needs at least one point per decade");
  FrequencyGrid g;
  g.omega_min_ = omega_min;
  g.omega_max_ = omega_max;
  g.ppd_ = points_per_decade;
  const double lo = std::log10(omega_min);
  const double hi = std::log10(omega_max);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round((hi - lo) * points_per_decade)));
  g.omegas_.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    g.omegas_.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps)));
  }
  g.omegas_.front() = omega_min;
  g.omegas_.back() = omega_max;
  return g;
}

HinfNorm hinf_norm(const ResponseEvaluator& eval, double value_at_zero, double limit_at_infinity,
                   const FrequencyGrid& grid) {
  const auto& w = grid.omegas();
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double mag = eval.magnitude(w[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  HinfNorm out{best_mag, w[best], false};
  if (w.size() >= 2) {
    const double lo = w[best == 0 ? 0 : best - 1];
    const double hi = w[best + 1 == w.size() ? best : best + 1];
    const auto [omega, mag] = golden_section_max([&](double x) { return eval.magnitude(x); }, lo, hi);
    if (mag > out.norm) out = {mag, omega, false};
  }
  if (value_at_zero >= out.norm) out = {value_at_zero, 0.0, false};
  if (limit_at_infinity >= out.norm) out = {limit_at_infinity, std::numeric_limits<double>::infinity(), false};
  return out;
}

template <class C>
HinfNorm hinf_norm(const RationalFunction<C>& f, const FrequencyGrid& grid) {
  if (!is_stable(f)) {
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN(), true};
  }
  if (f.is_zero()) return {0.0, 0.0, false};
  const double at_zero = std::fabs(static_cast<double>(CoeffTraits<C>::to_ld(f.num().coeff(0)) /
                                                       CoeffTraits<C>::to_ld(f.den().coeff(0))));
  double at_inf = 0.0;
  if (f.num().degree() == f.den().degree()) {
    at_inf = std::fabs(static_cast<double>(CoeffTraits<C>::to_ld(f.num().leading()) /
                                           CoeffTraits<C>::to_ld(f.den().leading())));
  }
  return hinf_norm(f.evaluator(), at_zero, at_inf, grid);
}

template HinfNorm hinf_norm(const ExactRF&, const FrequencyGrid&);
template HinfNorm hinf_norm(const NumericRF&, const FrequencyGrid&);

}  // namespace platoon
