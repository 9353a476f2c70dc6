#pragma once

#include "platoon/stability.hpp"

#include <vector>

namespace platoon {

/// Strictly increasing, log-uniform frequencies in rad/s.
class FrequencyGrid {
 public:
  /// Endpoints are included exactly; the spacing is the closest log-uniform
  /// step to 1/points_per_decade decades. Throws InvalidRange on bad bounds.
  static FrequencyGrid log_uniform(double omega_min, double omega_max, int points_per_decade);

  /// Default sweep used by the H-infinity estimator: 1e-4..1e4, 200/decade.
  static FrequencyGrid default_sweep() { return log_uniform(1e-4, 1e4, 200); }

  [[nodiscard]] const std::vector<double>& omegas() const { return omegas_; }
  [[nodiscard]] std::size_t size() const { return omegas_.size(); }
  [[nodiscard]] double omega_min() const { return omega_min_; }
  [[nodiscard]] double omega_max() const { return omega_max_; }
  [[nodiscard]] int points_per_decade() const { return ppd_; }

 private:
  std::vector<double> omegas_;
  double omega_min_ = 0.0;
  double omega_max_ = 0.0;
  int ppd_ = 0;
};

struct HinfNorm {
  double norm = 0.0;
  /// Frequency of the largest magnitude found; 0 and +inf are possible.
  double argmax_omega = 0.0;
  /// Set when the input is unstable or improper; norm is then +inf.
  bool unstable = false;
};

/// Lower-bound estimate of the H-infinity norm of a stable proper function.
///
/// Candidates: every grid sample, omega = 0, the limit at infinity, and a
/// golden-section refinement (to 1e-10 relative width in omega) around the
/// best grid sample.
template <class C>
HinfNorm hinf_norm(const RationalFunction<C>& f, const FrequencyGrid& grid = FrequencyGrid::default_sweep());

/// Same estimate for an already-validated evaluator. `limit_at_infinity` is
/// |f(inf)| (zero for strictly proper functions).
HinfNorm hinf_norm(const ResponseEvaluator& eval, double value_at_zero, double limit_at_infinity,
                   const FrequencyGrid& grid);

/// Maximise a unimodal function of log(omega) on [lo, hi] by golden section.
/// Returns (omega, value).
template <class F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double rel_width = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo);
  double b = std::log(hi);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  // |log width| bounds the relative omega width.
  while (b - a > rel_width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  return f1 > f2 ? std::pair{std::exp(x1), f1} : std::pair{std::exp(x2), f2};
}

}  // namespace platoon
