"""Certified complex approximations to the roots of a rational polynomial."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .fields import RationalField
from .polynomials import Poly

__all__ = ["RootError", "complex_roots", "default_tolerance"]


class RootError(ArithmeticError):
    """Raised when root refinement does not reach the requested residual."""


def _height(f: Poly) -> int:
    h = 1
    for a in f.c:
        a = Fraction(a)
        h = max(h, abs(a.numerator), a.denominator)
    return h


def default_tolerance(f: Poly) -> float:
    return 1e-12 * max(1, _height(f)) ** f.degree()


def complex_roots(
    f: Poly, tol: float | None = None, dps: int = 50, maxsteps: int = 200
) -> list[complex]:
    """All complex roots of a squarefree f over Q, sorted by (real, imag).

    Roots are found by Durand-Kerner iteration at ``dps`` digits and then
    polished by Newton steps; every returned root satisfies |f(r)| <= tol.
    """
    if not isinstance(f.field, RationalField):
        raise TypeError("complex_roots expects a polynomial over Q")
    if f.degree() < 1:
        raise ValueError("polynomial must have degree at least 1")
    if tol is None:
        tol = default_tolerance(f)
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(a.numerator) / a.denominator for a in reversed(f.c)]
        try:
            rts = mpmath.polyroots(coeffs, maxsteps=maxsteps, extraprec=2 * dps)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootError(f"root iteration did not converge: {exc}") from exc
        dcoeffs = [mpmath.mpf(a.numerator) / a.denominator for a in reversed(f.derivative().c)]
        out = []
        worst = 0.0
        for r in rts:
            r = mpmath.mpc(r)
            for _ in range(5):
                fd = mpmath.polyval(dcoeffs, r)
                if fd == 0:
                    break
                r = r - mpmath.polyval(coeffs, r) / fd
            res = float(abs(mpmath.polyval(coeffs, r)))
            worst = max(worst, res)
            out.append(complex(r))
    if worst > tol:
        raise RootError(f"best residual {worst:.3e} exceeds tolerance {tol:.3e}")
    return sorted(out, key=lambda z: (round(z.real, 12), round(z.imag, 12)))
