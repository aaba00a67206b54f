"""Conditioned log-gas electrostatics at the hard edge, soft edge and general ``c x^alpha`` background."""

from .general import (
    HARD_EDGE_C,
    SOFT_EDGE_C,
    GeneralAlphaProblem,
    background_field_coeff,
    general_dphi_dx,
    general_field,
    general_logE0,
    general_V1,
    general_V1_quadrature,
)
from .hard import (
    DensitySample,
    EntropyCheck,
    HardEdgeProblem,
    HardEdgeSolution,
    hard_count,
    hard_count_quadrature,
    hard_density,
    hard_dphi_dx,
    hard_drop,
    hard_drop_quadrature,
    hard_field,
    hard_field_boundary,
    hard_legacy_entropy,
    hard_solve,
    max_hard_count,
    solve_blob_endpoint,
)
from .soft import (
    SoftEdgeProblem,
    SoftEdgeSolution,
    left_drop_quadrature,
    lemma2_H,
    lemma2_H_quadrature,
    max_soft_count,
    soft_count,
    soft_count_quadrature,
    soft_density,
    soft_dphi_dx,
    soft_drop,
    soft_drop_quadrature,
    soft_entropy_direct,
    soft_entropy_integral_n0,
    soft_field,
    soft_field_boundary,
    soft_legacy_entropy,
    soft_legacy_entropy_formula,
    soft_solve,
    solve_half_width,
)
