"""Exact computer algebra for 3-loop Jacobi diagram spaces.

The package verifies, degree by degree and in exact rational arithmetic,
that the odd-degree part of the space of 3-loop Jacobi diagrams vanishes,
that the even-degree dimensions follow their closed form, and that the
supporting polynomial family is linearly independent with the expected
leading-term asymptotics.
"""

from .asymptotics import (
    DEFAULT_REGIMES,
    ExpVector,
    PuiseuxPoly,
    REGIME_ONE,
    REGIME_TWO,
    Regime,
    leading_term,
    substitute_regime,
    verify_q_asymptotics,
)
from .diagram_spaces import (
    CATALOG,
    DegreeInfo,
    InternalGraph,
    SliceSpace,
    eliminate_y4,
    even_closed_form,
    hilbert_coefficients,
    ihx_image_slice,
    middle_family_slice,
    odd_target_dim,
    subring_family_slice,
    tet_slice,
    tsq_odd_dim,
    x_from_y,
    y_from_x,
)
from .linalg import BigRational, QMatrix, nullspace_basis, rank, row_space_equal, rref
from .multipoly import (
    NotDivisibleError,
    NotInSubringError,
    Poly,
    SignedPermAction,
    VarSet,
    XVARS,
    YVARS,
    Y3VARS,
    ZVARS,
    Z3VARS,
    act,
    degree_slice_monomials,
    discriminant,
    divide_exact,
    elementary_symmetric,
    express_in_uvw,
    p2,
    p3,
    p4,
    q_poly,
    signed_s4,
    symmetrize,
)
from .verifier import (
    CheckRecord,
    Report,
    RunConfig,
    run_all,
    verify_asymptotics,
    verify_even_dims,
    verify_lemma,
    verify_odd_vanishing,
    verify_properties,
)

__all__ = [
    "BigRational",
    "CATALOG",
    "CheckRecord",
    "DEFAULT_REGIMES",
    "DegreeInfo",
    "ExpVector",
    "InternalGraph",
    "NotDivisibleError",
    "NotInSubringError",
    "Poly",
    "PuiseuxPoly",
    "QMatrix",
    "REGIME_ONE",
    "REGIME_TWO",
    "Regime",
    "Report",
    "RunConfig",
    "SignedPermAction",
    "SliceSpace",
    "VarSet",
    "XVARS",
    "YVARS",
    "Y3VARS",
    "ZVARS",
    "Z3VARS",
    "act",
    "degree_slice_monomials",
    "discriminant",
    "divide_exact",
    "eliminate_y4",
    "elementary_symmetric",
    "even_closed_form",
    "express_in_uvw",
    "hilbert_coefficients",
    "ihx_image_slice",
    "leading_term",
    "middle_family_slice",
    "nullspace_basis",
    "odd_target_dim",
    "p2",
    "p3",
    "p4",
    "q_poly",
    "rank",
    "row_space_equal",
    "rref",
    "run_all",
    "signed_s4",
    "subring_family_slice",
    "substitute_regime",
    "symmetrize",
    "tet_slice",
    "tsq_odd_dim",
    "verify_asymptotics",
    "verify_even_dims",
    "verify_lemma",
    "verify_odd_vanishing",
    "verify_properties",
    "verify_q_asymptotics",
    "x_from_y",
    "y_from_x",
]

__version__ = "0.1.0"
