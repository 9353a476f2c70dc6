"""Exact-arithmetic analysis and synthesis for heterogeneous vehicle platoons."""

from ._platoon import (
    PlatoonError,
    RationalFunction,
    bode,
    cascade_peak,
    candidate_controller,
    hinf_norm,
    homogeneous_growth,
    hurwitz_stable,
    integrator_loop_t,
    internal_stability,
    lift_order,
    middleton_integral,
    pd_mistune,
    search_parameters,
    sensitivity_matrix,
    synthesize,
    verify_factorization,
    youla_coprime,
)

__all__ = [
    "PlatoonError",
    "RationalFunction",
    "bode",
    "cascade_peak",
    "candidate_controller",
    "hinf_norm",
    "homogeneous_growth",
    "hurwitz_stable",
    "integrator_loop_t",
    "internal_stability",
    "lift_order",
    "middleton_integral",
    "pd_mistune",
    "search_parameters",
    "sensitivity_matrix",
    "synthesize",
    "verify_factorization",
    "youla_coprime",
]
