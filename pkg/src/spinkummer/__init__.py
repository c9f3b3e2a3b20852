"""Kummer embeddings of odd hyperelliptic Jacobians via pure spinors.

Exact arithmetic over Q, F_p and F_{p^d}; the Psi embedding, the theta
group action, duplication quartics and heights on J(Q).
"""

from .fields import QQ, GF, ExtensionField, FieldError, PrimeField, RationalField, extension_of
from .polynomials import Poly, PolyError
from .linalg import LinAlgError
from .quadratic_space import CurveError, HyperellipticCurve, QuadraticSpace
from .spinor import (
    SpinorError,
    annihilator,
    beta_form,
    clifford_act,
    frame_from_spinor,
    infinity,
    is_pure,
    pure_spinor_from_frame,
    spin_subset_order,
)
from .jacobian import (
    MumfordDivisor,
    MumfordError,
    affine_point,
    cantor_add,
    cantor_double,
    enumerate_points,
    identity,
    multiply,
    negate,
    random_point,
    validate_mumford,
)
from .kummer import KummerError, LiftVerdict, kummer_quartic_g2, membership_and_lift, psi_embed
from .heisenberg import (
    DuplicationPolys,
    ThetaError,
    duplication_polys,
    generic_spin_basis,
    heisenberg_matrix,
)
from .heights import (
    HeightError,
    canonical_height,
    dagger_height,
    height_report,
    local_epsilon_mu,
    naive_height,
    reduction_height,
)
from .serialize import SchemaError, parse_curve_spec

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "GF",
    "ExtensionField",
    "FieldError",
    "PrimeField",
    "RationalField",
    "extension_of",
    "Poly",
    "PolyError",
    "LinAlgError",
    "CurveError",
    "HyperellipticCurve",
    "QuadraticSpace",
    "SpinorError",
    "annihilator",
    "beta_form",
    "clifford_act",
    "frame_from_spinor",
    "infinity",
    "is_pure",
    "pure_spinor_from_frame",
    "spin_subset_order",
    "MumfordDivisor",
    "MumfordError",
    "affine_point",
    "cantor_add",
    "cantor_double",
    "enumerate_points",
    "identity",
    "multiply",
    "negate",
    "random_point",
    "validate_mumford",
    "KummerError",
    "LiftVerdict",
    "kummer_quartic_g2",
    "membership_and_lift",
    "psi_embed",
    "DuplicationPolys",
    "ThetaError",
    "duplication_polys",
    "generic_spin_basis",
    "heisenberg_matrix",
    "HeightError",
    "canonical_height",
    "dagger_height",
    "height_report",
    "local_epsilon_mu",
    "naive_height",
    "reduction_height",
    "SchemaError",
    "parse_curve_spec",
]
