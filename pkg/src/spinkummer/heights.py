"""Heights on J(Q): dagger, naive, reduction and canonical, plus local terms.

All integer-stage quantities are kept exact; logarithms are taken only at
the end, so that comparisons such as h_dagger <= h can be made on integers.
"""

from __future__ import annotations

import math
import random as _random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import sympy

from .fields import QQ, RationalField
from .heisenberg import DuplicationPolys, duplication_polys
from .jacobian import MumfordDivisor, affine_point, cantor_add, cantor_double, identity, negate
from .kummer import psi_embed
from .polynomials import Poly
from .quadratic_space import HyperellipticCurve, QuadraticSpace
from .roots import complex_roots

__all__ = [
    "HeightError",
    "primitive_vector",
    "weil_height",
    "dagger_vector",
    "dagger_height",
    "naive_vector",
    "naive_height",
    "reduction_height",
    "CanonicalHeight",
    "canonical_height",
    "LocalHeight",
    "local_epsilon_mu",
    "bad_primes",
    "HeightReport",
    "height_report",
    "rational_points",
    "random_rational_divisor",
]


class HeightError(ArithmeticError):
    """Raised when a height is undefined for the given input."""


def _require_q(D: MumfordDivisor):
    if not isinstance(D.field, RationalField):
        raise HeightError("heights are defined here for points over Q")


def primitive_vector(v: Sequence) -> list[int]:
    """Scale a nonzero rational vector to a primitive integer vector."""
    fr = [Fraction(a) for a in v]
    if not any(fr):
        raise HeightError("the zero vector has no height")
    den = 1
    for a in fr:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    return [a // g for a in ints]


def weil_height(v: Sequence) -> float:
    """log max |x_i| of the primitive integer representative."""
    return math.log(max(abs(a) for a in primitive_vector(v)))


def dagger_vector(D: MumfordDivisor) -> list[int]:
    """Primitive integer form of [1 : u_1 : ... : u_m]."""
    _require_q(D)
    m = D.m
    return primitive_vector([D.U.coeff(m - i) for i in range(m + 1)])


def dagger_height(D: MumfordDivisor) -> float:
    return math.log(max(abs(a) for a in dagger_vector(D)))


def naive_vector(space: QuadraticSpace, D: MumfordDivisor) -> list[int]:
    _require_q(D)
    return primitive_vector(psi_embed(space, D))


def naive_height(space: QuadraticSpace, D: MumfordDivisor) -> float:
    return math.log(max(abs(a) for a in naive_vector(space, D)))


# ---------------------------------------------------------------------------
# Reduction height
# ---------------------------------------------------------------------------


def reduction_height(curve: HyperellipticCurve, D: MumfordDivisor, tol: float | None = None,
                     dps: int = 50) -> float:
    """Half the finite part of h(1 : u_1 : ... : u_m) plus the root sum term.

    The archimedean term is (1/2) log sum |U(w_i)| / |f'(w_i)| over the
    complex roots of f, evaluated at ``dps`` digits from roots whose residual
    is below ``tol``.
    """
    _require_q(D)
    if D.U.gcd(curve.f).degree() > 0:
        raise HeightError("reduction height undefined for non-coprime U")
    den = 1
    for a in D.U.c:
        den = math.lcm(den, Fraction(a).denominator)
    finite = 0.5 * math.log(den)
    import mpmath

    roots = complex_roots(curve.f, tol=tol, dps=dps)
    fd = curve.f.derivative()
    with mpmath.workdps(dps):
        def ev(p: Poly, z):
            acc = mpmath.mpc(0)
            for a in reversed(p.c):
                acc = acc * z + mpmath.mpf(a.numerator) / a.denominator
            return acc

        total = mpmath.mpf(0)
        for w in roots:
            total += abs(ev(D.U, w)) / abs(ev(fd, w))
        return finite + float(mpmath.log(total) / 2)


# ---------------------------------------------------------------------------
# Canonical height
# ---------------------------------------------------------------------------


@dataclass
class CanonicalHeight:
    """Tate-limit estimate (1/2) 4^{-n} h([2^n] P) and an empirical tail bound.

    ``increments`` holds h([2] Q) - 4 h(Q) along the orbit; the tail bound is
    (1/2) * max|increment| * 4^{-n} / 3, the geometric tail of the telescoping
    series.  ``complete`` is False when the digit budget stopped the orbit
    early.
    """

    estimate: float
    iterations: int
    tail_bound: float
    heights: list = dc_field(default_factory=list)
    increments: list = dc_field(default_factory=list)
    complete: bool = True


def _size_digits(D: MumfordDivisor) -> int:
    """Approximate decimal size of the largest numerator or denominator."""
    bits = 0
    for p in (D.U, D.R):
        for a in p.c:
            a = Fraction(a)
            bits = max(bits, a.numerator.bit_length(), a.denominator.bit_length())
    return math.ceil(bits * math.log10(2))


def canonical_height(space: QuadraticSpace, D: MumfordDivisor, n_max: int = 6,
                     digit_budget: int = 200_000) -> CanonicalHeight:
    _require_q(D)
    hs = [naive_height(space, D)]
    Q = D
    complete = True
    for _ in range(n_max):
        if _size_digits(Q) > digit_budget:
            complete = False
            break
        Q = cantor_double(Q)
        hs.append(naive_height(space, Q))
    n = len(hs) - 1
    inc = [hs[k + 1] - 4 * hs[k] for k in range(n)]
    sup = max((abs(e) for e in inc), default=0.0)
    if not complete or n == 0:
        # no observed increments to bound the tail: fall back to the last height itself
        sup = max(sup, hs[-1])
    tail = 0.5 * sup * 4.0**-n / 3
    est = 0.5 * hs[-1] * 4.0**-n
    return CanonicalHeight(est, n, tail, hs, inc, complete)


# ---------------------------------------------------------------------------
# Local height differences
# ---------------------------------------------------------------------------


def _ord_p(a: Fraction, p: int) -> float:
    if a == 0:
        return math.inf
    v = 0
    n, d = a.numerator, a.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _log_abs(a: Fraction) -> float:
    return math.log(abs(a.numerator)) - math.log(a.denominator)


def _h_v(x: Sequence, place) -> float:
    if place == "inf":
        return _log_abs(max(abs(Fraction(a)) for a in x))
    p = int(place)
    return -min(_ord_p(Fraction(a), p) for a in x) * math.log(p)


def _min_ord(x: Sequence, p: int) -> float:
    return min(_ord_p(Fraction(a), p) for a in x)


@dataclass
class LocalHeight:
    """epsilon_v(P) and the truncated series mu_v(P) with its tail bound.

    At a finite place v = p, ``epsilon_ord`` is the exact integer
    4 ord_p(x) - ord_p(delta(x)) with epsilon_v = epsilon_ord * log p.
    """

    place: object
    epsilon: float
    mu: float
    terms: int
    tail_bound: float
    epsilons: list = dc_field(default_factory=list)
    epsilon_ord: int | None = None


def local_epsilon_mu(space: QuadraticSpace, D: MumfordDivisor, place, delta: DuplicationPolys,
                     terms: int = 6) -> LocalHeight:
    """epsilon_v(P) = h_v(delta(x)) - 4 h_v(x) and mu_v truncated after ``terms`` terms.

    The orbit x, delta(x), delta(delta(x)), ... is rescaled to primitive
    integer vectors at each step, which leaves every epsilon_v unchanged.
    """
    _require_q(D)
    if not isinstance(delta.field, RationalField):
        raise HeightError("local heights need duplication quartics over Q")
    x = [Fraction(a) for a in primitive_vector(psi_embed(space, D))]
    eps = []
    ords = []
    for _ in range(max(terms, 1)):
        y = delta(x)
        if not any(y):  # pragma: no cover - delta has no common zero on the Kummer
            raise AssertionError("duplication quartics vanish simultaneously on a Kummer point")
        if place == "inf":
            eps.append(_h_v(y, "inf") - 4 * _h_v(x, "inf"))
        else:
            p = int(place)
            o = int(4 * _min_ord(x, p) - _min_ord(y, p))
            ords.append(o)
            eps.append(o * math.log(p))
        x = [Fraction(a) for a in primitive_vector(y)]
    mu = sum(4.0 ** -(n + 1) * e for n, e in enumerate(eps[:terms]))
    sup = max(abs(e) for e in eps)
    tail = sup * 4.0**-terms / 3
    return LocalHeight(place, eps[0], mu, terms, tail, eps, ords[0] if ords else None)


def bad_primes(curve: HyperellipticCurve) -> list[int]:
    """Primes dividing 2 * disc(f) for an integral model."""
    disc = Fraction(curve.discriminant())
    n = abs(disc.numerator) * disc.denominator * 2
    return sorted(sympy.factorint(n).keys())


# ---------------------------------------------------------------------------
# Reports and rational points
# ---------------------------------------------------------------------------


@dataclass
class HeightReport:
    dagger: float
    naive: float
    reduction: float | None
    canonical: CanonicalHeight
    dagger_vector: list
    naive_vector: list
    local: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)


def height_report(curve: HyperellipticCurve, D: MumfordDivisor, n_max: int = 6,
                  places: Sequence | None = None, delta: DuplicationPolys | None = None) -> HeightReport:
    space = QuadraticSpace(curve)
    notes = []
    try:
        red = reduction_height(curve, D)
    except HeightError as exc:
        red = None
        notes.append(str(exc))
    can = canonical_height(space, D, n_max)
    local = {}
    if places:
        if delta is None:
            delta = duplication_polys(curve)
        for v in places:
            local[str(v)] = local_epsilon_mu(space, D, v, delta, terms=n_max)
    return HeightReport(
        dagger_height(D), naive_height(space, D), red, can,
        dagger_vector(D), naive_vector(space, D), local, notes,
    )


def rational_points(curve: HyperellipticCurve, bound: int = 30) -> list[MumfordDivisor]:
    """Affine points (x, y) - P_inf with x = n/d^2, |n| <= bound, d^2 <= bound.

    For odd degree f, a rational point has x-coordinate with square
    denominator, so only those are tried.
    """
    if not isinstance(curve.field, RationalField):
        raise HeightError("rational point search is over Q")
    seen = set()
    out = []
    for d in range(1, int(math.isqrt(bound)) + 1):
        for n in range(-bound, bound + 1):
            if math.gcd(n, d) != 1:
                continue
            a = Fraction(n, d * d)
            if a in seen:
                continue
            seen.add(a)
            y2 = curve.f(a)
            if QQ.is_square(y2):
                out.append(affine_point(curve, a, QQ.sqrt(y2)))
    return out


def random_rational_divisor(curve: HyperellipticCurve, rng: _random.Random,
                            points: Sequence[MumfordDivisor] | None = None,
                            max_terms: int | None = None) -> MumfordDivisor:
    """A random signed sum of up to ``max_terms`` (default g) found rational points."""
    pts = list(points) if points is not None else rational_points(curve)
    if not pts:
        raise HeightError("no rational points found in the search box")
    k = max_terms or curve.g
    D = identity(curve)
    for _ in range(rng.randint(1, k)):
        P = rng.choice(pts)
        D = cantor_add(D, P if rng.random() < 0.5 else negate(P))
    return D
