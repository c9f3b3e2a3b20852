"""Mumford representation of Jacobian points and Cantor's group law.

A point of J(k) is a triple (U, V, R) with U monic of degree m <= g,
deg R < m and f - R^2 = U V.  The group law below is Cantor's composition
and reduction; it shares no code with the spinor side and serves as the
independent oracle for the Kummer map.
"""

from __future__ import annotations

import itertools
import random as _random
from typing import Iterable, Sequence

from .fields import PrimeField, RationalField
from .polynomials import Poly
from .quadratic_space import HyperellipticCurve

__all__ = [
    "MumfordError",
    "MumfordDivisor",
    "validate_mumford",
    "identity",
    "cantor_add",
    "cantor_double",
    "negate",
    "multiply",
    "two_torsion_divisor",
    "enumerate_points",
    "affine_point",
    "random_point",
]


class MumfordError(ValueError):
    """Raised for triples violating the Mumford conditions."""


class MumfordDivisor:
    __slots__ = ("curve", "U", "V", "R")

    def __init__(self, curve: HyperellipticCurve, U: Poly, V: Poly, R: Poly):
        self.curve = curve
        self.U = U
        self.V = V
        self.R = R

    @property
    def m(self) -> int:
        return self.U.degree()

    @property
    def field(self):
        return self.U.field

    def is_identity(self) -> bool:
        return self.U.degree() == 0

    def key(self) -> tuple:
        return (tuple(self.U.c), tuple(self.R.c))

    def __eq__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        return self.U == other.U and self.R == other.R and self.V == other.V

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        return cantor_add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return cantor_add(self, negate(other))

    def __repr__(self):
        return f"Mumford(U={self.U}, V={self.V}, R={self.R})"


def _as_poly(p, field) -> Poly:
    if isinstance(p, Poly):
        return p.change_field(field) if p.field != field else p
    return Poly(list(p), field)


def validate_mumford(curve: HyperellipticCurve, U, V, R, field=None) -> MumfordDivisor:
    """Check f - R^2 = U V together with the degree and monicity conditions."""
    F = field if field is not None else curve.field
    U, V, R = _as_poly(U, F), _as_poly(V, F), _as_poly(R, F)
    g = curve.g
    f = curve.f.change_field(F) if F != curve.field else curve.f
    if U.is_zero() or not U.is_monic():
        raise MumfordError("U must be monic")
    if V.is_zero() or not V.is_monic():
        raise MumfordError("V must be monic")
    m = U.degree()
    if m > g:
        raise MumfordError(f"deg U = {m} exceeds the genus {g}")
    if U.degree() + V.degree() != 2 * g + 1:
        raise MumfordError("deg U + deg V must equal 2g + 1")
    if R.degree() >= max(m, 0) and not R.is_zero():
        raise MumfordError("deg R must be less than deg U")
    if f - R * R != U * V:
        raise MumfordError("f - R^2 != U V")
    return MumfordDivisor(curve, U, V, R)


def _f_over(curve: HyperellipticCurve, F) -> Poly:
    return curve.f if F == curve.field else curve.f.change_field(F)


def identity(curve: HyperellipticCurve, field=None) -> MumfordDivisor:
    F = field if field is not None else curve.field
    f = _f_over(curve, F)
    return MumfordDivisor(curve, Poly.constant(1, F), f, Poly([], F))


def _finish(curve, U: Poly, R: Poly) -> MumfordDivisor:
    F = U.field
    f = _f_over(curve, F)
    V = (f - R * R).divmod(U)[0]
    return MumfordDivisor(curve, U, V, R)


def negate(D: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(D.curve, D.U, D.V, -D.R)


def _reduce(curve, u: Poly, v: Poly) -> MumfordDivisor:
    g = curve.g
    F = u.field
    f = _f_over(curve, F)
    u = u.monic()
    v = v.divmod(u)[1]
    while u.degree() > g:
        u2 = (f - v * v).exact_div(u).monic()
        v = (-v).divmod(u2)[1]
        u = u2
    return _finish(curve, u, v)


def cantor_add(D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    """Cantor composition followed by reduction."""
    curve = D1.curve
    F = D1.field
    f = _f_over(curve, F)
    u1, v1, u2, v2 = D1.U, D1.R, D2.U, D2.R
    d0, e1, e2 = u1.xgcd(u2)
    d, c1, c2 = d0.xgcd(v1 + v2)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (u1 * u2).divmod(d * d)[0]
    v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f)).divmod(d)[0]
    return _reduce(curve, u, v.divmod(u)[1] if u.degree() > 0 else Poly([], F))


def cantor_double(D: MumfordDivisor) -> MumfordDivisor:
    return cantor_add(D, D)


def multiply(D: MumfordDivisor, k: int) -> MumfordDivisor:
    if k < 0:
        return multiply(negate(D), -k)
    out = identity(D.curve, D.field)
    base = D
    while k:
        if k & 1:
            out = cantor_add(out, base)
        base = cantor_double(base)
        k >>= 1
    return out


def two_torsion_divisor(curve: HyperellipticCurve, roots: Sequence, I: Iterable[int]) -> MumfordDivisor:
    """[sum_{i in I} (omega_i, 0) - |I| P_inf] with I ⊆ {1..2g+1}, canonicalised.

    If |I| > g the complement is used; the two give the same class.
    """
    n = 2 * curve.g + 1
    I = frozenset(I)
    if not I <= set(range(1, n + 1)):
        raise MumfordError("root indices must lie in 1..2g+1")
    if len(I) > curve.g:
        I = frozenset(range(1, n + 1)) - I
    F = roots[0].field if hasattr(roots[0], "field") else curve.field
    U = Poly.from_roots([roots[i - 1] for i in sorted(I)], F)
    return _finish(curve, U, Poly([], F))


def affine_point(curve: HyperellipticCurve, a, b, field=None) -> MumfordDivisor:
    """The class of (a, b) - P_inf."""
    F = field if field is not None else curve.field
    U = Poly([-F(a), F.one], F)
    R = Poly([F(b)], F)
    return validate_mumford(curve, U, _f_over(curve, F).__sub__(R * R).divmod(U)[0], R, F)


def random_point(curve: HyperellipticCurve, rng: _random.Random, field=None) -> MumfordDivisor:
    """Sum of g random affine points (finite fields only)."""
    F = field if field is not None else curve.field
    if isinstance(F, RationalField):
        raise ValueError("random_point needs a finite field; use rational_points for Q")
    f = _f_over(curve, F)
    D = identity(curve, F)
    added = 0
    while added < curve.g:
        a = F.random(rng)
        y2 = f(a)
        if not F.is_square(y2):
            continue
        b = F.sqrt(y2)
        if rng.random() < 0.5:
            b = -b
        D = cantor_add(D, affine_point(curve, a, b, F))
        added += 1
    return D


def enumerate_points(curve: HyperellipticCurve, budget: int = 10**7) -> list[MumfordDivisor]:
    """All of J(F_p) by brute force over (U, R)."""
    F = curve.field
    if not isinstance(F, PrimeField):
        raise ValueError("enumeration is only available over prime fields")
    p, g = F.p, curve.g
    if p ** (2 * g) > budget:
        raise ValueError(f"enumeration budget exceeded: p^(2g) = {p ** (2 * g)} > {budget}")
    f = curve.f
    out = [identity(curve)]
    for m in range(1, g + 1):
        for ucoef in itertools.product(range(p), repeat=m):
            U = Poly(list(ucoef) + [1], F)
            for rcoef in itertools.product(range(p), repeat=m):
                R = Poly(list(rcoef), F)
                q, r = (f - R * R).divmod(U)
                if r.is_zero():
                    out.append(MumfordDivisor(curve, U, q, R))
    return out
