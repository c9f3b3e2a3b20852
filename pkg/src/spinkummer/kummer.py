"""The Kummer embedding Psi: J -> P(S) and its image.

A Mumford triple (U, V, R) of degree m determines the maximal isotropic
subspace of V spanned by x^i U (i < g - m) and x^i V - a_i/2 - q_i R/2
(i < m), where x^i V = p_i U + a_i and -2 x^i R = q_i U + b_i.  Its pure
spinor, normalised to have coordinate 1 at J = {2g, ..., 2g-m+1}, is Psi(D).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .jacobian import MumfordDivisor
from .polynomials import Poly
from .quadratic_space import HyperellipticCurve, QuadraticSpace
from .spinor import (
    IsotropicFrame,
    SpinorError,
    annihilator,
    frame_from_subspace,
    frame_to_subspace,
    generic_chart_frame,
    pure_spinor_from_frame,
)

__all__ = [
    "KummerError",
    "mumford_subspace",
    "mumford_to_frame",
    "psi_embed",
    "LiftVerdict",
    "membership_and_lift",
    "kummer_quartic_g2",
    "eval_form",
]


class KummerError(ArithmeticError):
    """Raised for invalid inputs to the Kummer constructions."""


def mumford_subspace(space: QuadraticSpace, D: MumfordDivisor) -> list:
    """Rows (straightened coordinates) spanning the isotropic subspace of D."""
    F = D.field
    if F != space.field:
        raise KummerError("divisor and quadratic space live over different fields")
    g = space.g
    m = D.m
    half = F.one / 2
    rows = []
    for i in range(g - m):
        rows.append(Poly.monomial(i, F) * D.U)
    for i in range(m):
        xi = Poly.monomial(i, F)
        xV = xi * D.V
        _, a = xV.divmod(D.U)
        q, _ = (xi * D.R * (-2)).divmod(D.U)
        rows.append(xV - (a + q * D.R) * half)
    return [space.to_P(r.coeffs(space.n)) for r in rows]


def mumford_to_frame(space: QuadraticSpace, D: MumfordDivisor) -> IsotropicFrame:
    """Frame of the subspace of D, charted at J = {2g, ..., 2g-m+1}."""
    g = space.g
    J = range(2 * g, 2 * g - D.m, -1)
    try:
        return frame_from_subspace(space, mumford_subspace(space, D), J)
    except SpinorError as exc:  # pragma: no cover - excluded by the chart argument
        raise AssertionError(f"pivot failure in the Mumford chart: {exc}") from exc


def psi_embed(space: QuadraticSpace, D: MumfordDivisor) -> list:
    """Psi(D) as a spin vector with coordinate 1 at J = {2g, ..., 2g-m+1}."""
    return pure_spinor_from_frame(space, mumford_to_frame(space, D))


# ---------------------------------------------------------------------------
# Membership and lifting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftVerdict:
    """Outcome of the membership test.

    ``rank`` is the rank of (a, b) -> psi(a, x b) on the annihilator; for
    rank 1 the form is lam * v v^t.  In the coordinates of ``psi_embed`` the
    images of k-points of J have -lam a nonzero square, so ``square_class``
    is the class of -lam modulo squares (squarefree integer over Q, +1/-1
    over a finite field) and the point lifts exactly when it is 1.
    """

    on_kummer: bool
    rank: int | None = None
    lam: object = None
    square_class: int | None = None
    lifts: bool | None = None
    reason: str = ""


def _square_class(field, a) -> int:
    return field.square_class(a)


def membership_and_lift(space: QuadraticSpace, s: Sequence) -> LiftVerdict:
    F = space.field
    g = space.g
    L = annihilator(space, s)
    if len(L) < g:
        return LiftVerdict(False, reason=f"annihilator has dimension {len(L)} < g")
    for a in L:
        for b in L:
            if space.psi(a, b):
                return LiftVerdict(False, reason="annihilator is not isotropic")
    xL = [space.times_x(b) for b in L]
    A = [[space.psi(a, xb) for xb in xL] for a in L]
    r = linalg.rank(A, F)
    if r == 0:
        return LiftVerdict(True, rank=0, lifts=True)
    if r > 1:
        return LiftVerdict(False, rank=r, reason="psi(a, xb) has rank > 1 on the subspace")
    lam = next(A[i][i] for i in range(g) if A[i][i])
    sc = _square_class(F, -lam)
    return LiftVerdict(True, rank=1, lam=lam, square_class=sc, lifts=(sc == 1))


# ---------------------------------------------------------------------------
# The genus 2 quartic
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _generic_quartic_g2() -> dict:
    """The Kummer quartic over Q(c1..c5) as {exponents: sympy coefficient}."""
    import sympy

    from .symbolic import SymbolicField

    S = SymbolicField("c1 c2 c3 c4 c5 x2 x3 x4")
    c1, c2, c3, c4, c5, x2, x3, x4 = S.gens()
    curve = HyperellipticCurve([c1, c2, c3, c4, c5], S, validate=False)
    space = QuadraticSpace(curve)
    s = [S.one, x2, x3, x4]  # affine chart x1 = 1
    frame = generic_chart_frame(2, s, S)
    L = frame_to_subspace(space, frame)
    xL = [space.times_x(b) for b in L]
    A = [[space.psi(a, xb) for xb in xL] for a in L]
    d = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    X2, X3, X4 = S.symbols[5:]
    poly = sympy.Poly(d.e, X2, X3, X4)
    top = poly.coeff_monomial(X3**4)
    out = {}
    for (e2, e3, e4), coeff in poly.terms():
        deg = e2 + e3 + e4
        if deg > 4:  # pragma: no cover - the determinant has degree 4
            raise AssertionError("quartic has unexpected degree")
        out[(4 - deg, e2, e3, e4)] = sympy.expand(coeff / top)
    return out


def kummer_quartic_g2(curve: HyperellipticCurve | None = None) -> dict:
    """Quartic equation of the genus 2 Kummer in the coordinates x_1..x_4.

    Derived as det(L^t T L) = 0 on the chart x_1 = 1, where T is the matrix
    of psi(a, x b) and L spans the isotropic subspace of the chart, then
    homogenised and scaled so that the coefficient of x_3^4 is 1.  Without a
    curve the coefficients are sympy polynomials in c1..c5; with a curve
    they are elements of its field.
    """
    generic = _generic_quartic_g2()
    if curve is None:
        return dict(generic)
    if curve.g != 2:
        raise KummerError("the explicit quartic is only available for genus 2")
    import sympy

    syms = sympy.symbols("c1:6")
    F = curve.field
    out = {}
    for mono, coeff in generic.items():
        p = sympy.Poly(coeff, *syms)
        acc = F.zero
        for exps, a in p.terms():
            a = sympy.Rational(a)
            term = F(int(a.p)) / F(int(a.q))
            for c, e in zip(curve.coeffs, exps):
                if e:
                    term = term * c**e
            acc = acc + term
        if acc:
            out[mono] = acc
    return out


def eval_form(form: dict, x: Sequence, field):
    """Evaluate a homogeneous form {exponent tuple: coefficient} at x."""
    acc = field.zero
    for exps, c in form.items():
        t = c
        for xi, e in zip(x, exps):
            if e:
                t = t * xi**e
        acc = acc + t
    return acc
