#pragma once

#include "platoon/frequency.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace platoon::cascade {

/// |y_n / d_1|(j omega) for a predecessor-following cascade, accumulated as
/// a sum of logs so long cascades do not overflow.
struct CascadeProfile {
  FrequencyGrid grid;
  std::vector<double> log_magnitudes;  ///< natural log of the product
  double peak = 1.0;
  double argmax_omega = 0.0;
};

/// Throws StabilityCheckFailed naming the first non-stabilising controller.
CascadeProfile cascade_gain(const std::vector<ExactRF>& controllers, int m, const FrequencyGrid& grid);

/// Columns omega, abs, abs_db.
void write_profile_csv(std::ostream& os, const CascadeProfile& profile);

struct QuadratureParams {
  double omega_lo = 1e-6;
  double omega_hi = 1e6;
  double tol_per_decade = 1e-10;
  int max_depth = 40;
  /// Extend omega_lo by decades until the estimated head below it is
  /// smaller than this.
  double head_tol = 1e-7;
};

struct MiddletonResult {
  double value = 0.0;  ///< includes the head and tail estimates
  double truncation_bound = 0.0;
  double omega_lo = 0.0;  ///< lower limit actually used
  double omega_hi = 0.0;
};

/// Integral over (0, inf) of ln|T(j omega)| / omega^2, by adaptive Simpson per
/// decade in log(omega). The piece below omega_lo uses the small-omega
/// series (integrand O(omega^k), k >= 0); the tail above omega_hi uses the
/// |T| ~ C omega^-r decay. Throws DivergentAtOrigin unless T(0) = 1.
MiddletonResult middleton_integral(const ExactRF& t, const QuadratureParams& params = {});

struct GrowthRow {
  int n = 0;
  double norm = 0.0;  ///< ||T||^n
};

struct GrowthTable {
  double peak = 0.0;     ///< ||T||_inf
  double omega0 = 0.0;   ///< argmax |T|
  bool exponential_growth = false;
  std::vector<GrowthRow> rows;
};

/// ||T^n||_inf = ||T||_inf^n for n = 1..n_max with T = c/(s^m + c).
GrowthTable homogeneous_growth(const ExactRF& c, int m, int n_max);

/// Counter-based uniform draw in [0, 1) keyed by (seed, trial, index):
/// splitmix64 applied to the key mixed in that order, top 53 bits.
double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t index);

struct TrialResult {
  int trial = 0;
  double peak = 0.0;
  double argmax_omega = 0.0;
};

struct MistuneReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double k_min = 0.0;
  double k_max = 0.0;
  std::vector<TrialResult> results;
  double median_peak = 0.0;
  double max_peak = 0.0;
};

/// PD controllers c_k = 1 + k_k s on s^-2 with k_k uniform in [k_min, k_max].
/// Throws InvalidRange unless 0 < k_min <= k_max, n >= 1, trials >= 1.
MistuneReport pd_mistune_experiment(int n, double k_min, double k_max, int trials, std::uint64_t seed,
                                    const FrequencyGrid& grid);

/// Columns trial, peak, argmax_omega.
void write_mistune_csv(std::ostream& os, const MistuneReport& report);

}  // namespace platoon::cascade
