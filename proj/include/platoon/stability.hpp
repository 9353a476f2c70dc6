#pragma once

#include "platoon/rational_function.hpp"

#include <array>
#include <string_view>

namespace platoon {

/// True iff every root of p has strictly negative real part.
///
/// Routh table in the coefficient field of p. Any zero or negative pivot
/// means "not strictly Hurwitz", so imaginary-axis roots are rejected.
template <class C>
bool hurwitz_stable(const Polynomial<C>& p) {
  if (p.is_zero()) throw ZeroPolynomial("Hurwitz test of the zero polynomial");
  const int n = p.degree();
  if (n == 0) return true;
  const bool flip = p.leading() < C(0);
  std::vector<C> desc;
  for (int k = n; k >= 0; --k) desc.push_back(flip ? C(-p.coeff(static_cast<std::size_t>(k))) : p.coeff(static_cast<std::size_t>(k)));

  std::vector<C> prev;
  std::vector<C> cur;
  for (std::size_t k = 0; k < desc.size(); k += 2) prev.push_back(desc[k]);
  for (std::size_t k = 1; k < desc.size(); k += 2) cur.push_back(desc[k]);
  if (cur.empty()) cur.push_back(C(0));
  if (!(prev.front() > C(0))) return false;
  for (int row = 1; row <= n; ++row) {
    if (!(cur.front() > C(0))) return false;
    if (row == n) break;
    std::vector<C> next;
    for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
      const C a = j + 1 < cur.size() ? cur[j + 1] : C(0);
      next.push_back((cur.front() * prev[j + 1] - prev.front() * a) / cur.front());
    }
    if (next.empty()) next.push_back(C(0));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return true;
}

/// Proper with a strictly Hurwitz denominator, i.e. a member of RH-infinity.
template <class C>
bool is_stable(const RationalFunction<C>& f) {
  return f.is_proper() && hurwitz_stable(f.den());
}

/// The four closed-loop maps of the standard feedback loop and their stability.
template <class C>
struct StabilityReport {
  static constexpr std::array<std::string_view, 4> kNames{"1/(1+pc)", "p/(1+pc)", "c/(1+pc)", "pc/(1+pc)"};

  std::array<RationalFunction<C>, 4> gang_of_four;
  /// Hurwitz denominator.
  std::array<bool, 4> each_stable{};
  /// Flag only; PD-type controllers make c/(1+pc) improper.
  std::array<bool, 4> each_proper{};
  bool internally_stable = false;
  bool all_proper = false;
};

/// Forms the four maps over the raw characteristic polynomial
/// den(p)den(c) + num(p)num(c). internally_stable requires a Hurwitz
/// denominator for all four; properness is reported separately.
/// Throws IllPosed when 1 + pc is identically zero.
template <class C>
StabilityReport<C> internal_stability(const RationalFunction<C>& p, const RationalFunction<C>& c);

/// Same verdict as internal_stability(p, c).internally_stable without forming
/// the four maps.
template <class C>
bool internally_stabilises(const RationalFunction<C>& p, const RationalFunction<C>& c);

/// S = 1/(1+pc), T = pc/(1+pc).
template <class C>
struct ClosedLoop {
  RationalFunction<C> sensitivity;
  RationalFunction<C> complementary;
};

template <class C>
ClosedLoop<C> closed_loop(const RationalFunction<C>& p, const RationalFunction<C>& c);

/// Complementary sensitivity c/(s^m + c) for the m-fold integrator.
ExactRF integrator_loop_t(const ExactRF& c, int m);

}  // namespace platoon
