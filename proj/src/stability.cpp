#include "platoon/stability.hpp"

namespace platoon {

namespace {

template <class C>
Polynomial<C> characteristic(const RationalFunction<C>& p, const RationalFunction<C>& c) {
  Polynomial<C> chi = p.den() * c.den() + p.num() * c.num();
  if (chi.is_zero()) throw IllPosed("1 + pc is identically zero");
  return chi;
}

}  // namespace

template <class C>
StabilityReport<C> internal_stability(const RationalFunction<C>& p, const RationalFunction<C>& c) {
  const Polynomial<C> chi = characteristic(p, c);
  StabilityReport<C> report;
  report.gang_of_four = {
      RationalFunction<C>(p.den() * c.den(), chi),
      RationalFunction<C>(p.num() * c.den(), chi),
      RationalFunction<C>(c.num() * p.den(), chi),
      RationalFunction<C>(p.num() * c.num(), chi),
  };
  report.internally_stable = true;
  report.all_proper = true;
  for (std::size_t k = 0; k < 4; ++k) {
    report.each_stable[k] = hurwitz_stable(report.gang_of_four[k].den());
    report.each_proper[k] = report.gang_of_four[k].is_proper();
    report.internally_stable = report.internally_stable && report.each_stable[k];
    report.all_proper = report.all_proper && report.each_proper[k];
  }
  return report;
}

template <class C>
bool internally_stabilises(const RationalFunction<C>& p, const RationalFunction<C>& c) {
  return hurwitz_stable(characteristic(p, c));
}

template <class C>
ClosedLoop<C> closed_loop(const RationalFunction<C>& p, const RationalFunction<C>& c) {
  const Polynomial<C> chi = characteristic(p, c);
  return {RationalFunction<C>(p.den() * c.den(), chi), RationalFunction<C>(p.num() * c.num(), chi)};
}

ExactRF integrator_loop_t(const ExactRF& c, int m) { return closed_loop(s_power(-m), c).complementary; }

template StabilityReport<Rational> internal_stability(const ExactRF&, const ExactRF&);
template StabilityReport<double> internal_stability(const NumericRF&, const NumericRF&);
template bool internally_stabilises(const ExactRF&, const ExactRF&);
template bool internally_stabilises(const NumericRF&, const NumericRF&);
template ClosedLoop<Rational> closed_loop(const ExactRF&, const ExactRF&);
template ClosedLoop<double> closed_loop(const NumericRF&, const NumericRF&);

}  // namespace platoon
