"""Radial boundary-layer laboratory for a nonlocal sinh-Gordon problem.

Thin re-export of the compiled core: closed-form two-term expansions,
the coupled Newton solver, concentration weights and empirical pairings.
"""

from ._core import (
    BoundaryExpansion,
    ComparisonLimits,
    FluxConstancy,
    Grading,
    HolderFunction,
    InterpolatedValue,
    LayerExpansion,
    LayerPoint,
    LocalExpansion,
    Mesh,
    ModelKind,
    PairingMode,
    PairingResult,
    ProblemParams,
    RadialSolution,
    SolverFailure,
    TwoTerm,
    build_mesh,
    comparison_limits,
    decay_envelope,
    dtn_two_term,
    empirical_pairing,
    energy,
    expand_boundary,
    find_half_height_radius,
    half_height_q,
    integro_identity_check,
    interpolate_at_radius,
    layer_expansion,
    local_model_expansions,
    solve,
    solve_b,
    solve_k_of_p,
    weight_II,
    weight_Ii,
    weight_Iii,
)

__all__ = [
    "BoundaryExpansion",
    "ComparisonLimits",
    "FluxConstancy",
    "Grading",
    "HolderFunction",
    "InterpolatedValue",
    "LayerExpansion",
    "LayerPoint",
    "LocalExpansion",
    "Mesh",
    "ModelKind",
    "PairingMode",
    "PairingResult",
    "ProblemParams",
    "RadialSolution",
    "SolverFailure",
    "TwoTerm",
    "build_mesh",
    "comparison_limits",
    "decay_envelope",
    "dtn_two_term",
    "empirical_pairing",
    "energy",
    "expand_boundary",
    "find_half_height_radius",
    "half_height_q",
    "integro_identity_check",
    "interpolate_at_radius",
    "layer_expansion",
    "local_model_expansions",
    "solve",
    "solve_b",
    "solve_k_of_p",
    "weight_II",
    "weight_Ii",
    "weight_Iii",
]
