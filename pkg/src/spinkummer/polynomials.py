"""Dense univariate polynomials over the exact fields of :mod:`fields`.

Coefficients are stored in ascending order.  Division is only offered by a
monic divisor, which keeps it denominator free; the field algorithms (gcd,
factorisation, root finding) normalise divisors before dividing.
"""

from __future__ import annotations

import random as _random
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .fields import ExtensionField, FieldError, PrimeField, RationalField, extension_of

__all__ = ["Poly", "PolyError", "ZERO_DEGREE", "splitting_data", "roots_in"]

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


class PolyError(ValueError):
    """Raised for invalid polynomial operations."""


class Poly:
    __slots__ = ("c", "field", "var")

    def __init__(self, coeffs: Iterable, field, var: str = "x"):
        c = [field(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = c
        self.field = field
        self.var = var

    @classmethod
    def _raw(cls, c: list, field, var: str = "x") -> "Poly":
        while c and not c[-1]:
            c.pop()
        obj = cls.__new__(cls)
        obj.c = c
        obj.field = field
        obj.var = var
        return obj

    @classmethod
    def x(cls, field) -> "Poly":
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def constant(cls, a, field) -> "Poly":
        return cls([a], field)

    @classmethod
    def monomial(cls, n: int, field, a=1) -> "Poly":
        return cls._raw([field.zero] * n + [field(a)], field)

    @classmethod
    def from_roots(cls, roots: Sequence, field) -> "Poly":
        out = cls.constant(1, field)
        for r in roots:
            out = out * cls._raw([-field(r), field.one], field)
        return out

    # -- basic queries --------------------------------------------------

    def degree(self) -> int:
        return len(self.c) - 1 if self.c else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        if not self.c:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def coeffs(self, n: int | None = None) -> list:
        """Ascending coefficient list, zero padded to length n if given."""
        if n is None:
            return list(self.c)
        if n < len(self.c):
            raise PolyError("padding length shorter than the polynomial")
        return list(self.c) + [self.field.zero] * (n - len(self.c))

    def __call__(self, a):
        acc = self.field.zero
        for coef in reversed(self.c):
            acc = acc * a + coef
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == ([self.field(other)] if other else [])
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.c))

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    # -- ring operations --------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.field)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly._raw(out, self.field, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-v for v in self.c], self.field, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field(other)
            return Poly._raw([v * s for v in self.c], self.field, self.var)
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw([], self.field, self.var)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.field, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative polynomial power")
        out = Poly.constant(1, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, s) -> "Poly":
        return self * s

    def monic(self) -> "Poly":
        if not self.c:
            raise PolyError("cannot normalise the zero polynomial")
        inv = self.field.one / self.c[-1]
        return Poly._raw([v * inv for v in self.c], self.field, self.var)

    def divmod(self, b: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division by a monic polynomial."""
        if not isinstance(b, Poly) or b.is_zero():
            raise PolyError("division by the zero polynomial")
        if not b.is_monic():
            raise PolyError("divisor must be monic")
        r = list(self.c)
        db = len(b.c) - 1
        if len(r) - 1 < db:
            return Poly._raw([], self.field), Poly._raw(r, self.field)
        q = [self.field.zero] * (len(r) - db)
        bc = b.c
        for k in range(len(r) - 1, db - 1, -1):
            t = r[k]
            if t:
                q[k - db] = t
                for i in range(db):
                    r[k - db + i] = r[k - db + i] - t * bc[i]
            r[k] = self.field.zero
        return Poly._raw(q, self.field), Poly._raw(r[:db], self.field)

    def __divmod__(self, b):
        return self.divmod(b)

    def __floordiv__(self, b):
        return self.divmod(b)[0]

    def __mod__(self, b):
        return self.divmod(b)[1]

    def exact_div(self, b: "Poly") -> "Poly":
        """Quotient by a (not necessarily monic) divisor; fails on a remainder."""
        lc = b.lc()
        q, r = self.divmod(b.monic())
        if r:
            raise PolyError("division is not exact")
        return q * (self.field.one / lc)

    def derivative(self) -> "Poly":
        return Poly._raw([self.c[i] * i for i in range(1, len(self.c))], self.field, self.var)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (zero if both inputs are zero)."""
        a, b = self, other
        while b:
            a, b = b, a.divmod(b.monic())[1]
        return a.monic() if a else a

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (d, s, t) with d = s*self + t*other and d monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.constant(1, F), Poly._raw([], F)
        t0, t1 = Poly._raw([], F), Poly.constant(1, F)
        while r1:
            lc = r1.lc()
            q, r = r0.divmod(r1.monic())
            q = q * (F.one / lc)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = F.one / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def resultant(self, other: "Poly"):
        """Res(self, other) via the Euclidean algorithm."""
        F = self.field
        a, b = self, other
        if not a or not b:
            return F.zero
        res = F.one
        while b.degree() > 0:
            da, db = a.degree(), b.degree()
            lcb = b.lc()
            r = a.divmod(b.monic())[1]
            if not r:
                return F.zero
            # Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
            dr = r.degree()
            if (da * db) % 2:
                res = -res
            res = res * lcb ** (da - dr)
            a, b = b, r
        # b is a nonzero constant
        return res * b.lc() ** a.degree()

    def discriminant(self):
        """Discriminant of a monic polynomial: (-1)^{n(n-1)/2} Res(f, f')."""
        n = self.degree()
        if not self.is_monic():
            raise PolyError("discriminant is only defined here for monic input")
        r = self.resultant(self.derivative())
        return -r if (n * (n - 1) // 2) % 2 else r

    def powmod(self, e: int, m: "Poly") -> "Poly":
        out = Poly.constant(1, self.field).divmod(m)[1]
        base = self.divmod(m)[1]
        while e:
            if e & 1:
                out = (out * base).divmod(m)[1]
            base = (base * base).divmod(m)[1]
            e >>= 1
        return out

    def map_coeffs(self, fn, field) -> "Poly":
        return Poly([fn(a) for a in self.c], field, self.var)

    def change_field(self, field) -> "Poly":
        return Poly([field(a) for a in self.c], field, self.var)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and a == 1:
                terms.append(mono)
            else:
                coef = f"({a})" if mono and isinstance(a, Fraction) and a.denominator != 1 else str(a)
                terms.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Finite-field factorisation and roots
# ---------------------------------------------------------------------------


def distinct_degree_factors(f: Poly) -> list[tuple[int, Poly]]:
    """Distinct-degree factorisation of a squarefree monic f over a finite field."""
    F = f.field
    q = F.order
    x = Poly.x(F)
    out = []
    h = x
    rest = f.monic()
    k = 0
    while rest.degree() >= 2 * (k + 1):
        k += 1
        h = h.powmod(q, rest)
        g = rest.gcd(h - x)
        if g.degree() > 0:
            out.append((k, g))
            rest = rest.divmod(g)[0]
            h = h.divmod(rest)[1]
    if rest.degree() > 0:
        out.append((rest.degree(), rest))
    return out


def _equal_degree_split(f: Poly, k: int, rng: _random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of f into its irreducible factors of degree k."""
    n = f.degree()
    if n == k:
        return [f]
    F = f.field
    q = F.order
    e = (q**k - 1) // 2
    while True:
        a = Poly([F.random(rng) for _ in range(n)], F)
        if a.degree() < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree() < n:
            break
        g = f.gcd(a.powmod(e, f) - 1)
        if 0 < g.degree() < n:
            break
    return _equal_degree_split(g, k, rng) + _equal_degree_split(f.divmod(g)[0], k, rng)


def factor_squarefree(f: Poly, seed: int = 0) -> list[Poly]:
    """Monic irreducible factors of a squarefree polynomial over a finite field."""
    rng = _random.Random(seed)
    out = []
    for k, g in distinct_degree_factors(f):
        out.extend(_equal_degree_split(g, k, rng))
    return out


def _sort_key(a):
    if hasattr(a, "sort_key"):
        return a.sort_key()
    return int(a)


def roots_in(f: Poly, field, seed: int = 0) -> list:
    """All roots of f lying in the finite field ``field``, sorted canonically."""
    g = f.change_field(field).monic()
    x = Poly.x(field)
    split = g.gcd(x.powmod(field.order, g) - x)
    rng = _random.Random(seed)
    linear = _equal_degree_split(split, 1, rng) if split.degree() > 0 else []
    roots = [-lf.c[0] for lf in linear]
    return sorted(roots, key=_sort_key)


def splitting_data(f: Poly, seed: int = 0):
    """Return (d, roots): f splits over F_{p^d}, roots sorted by coefficient encoding."""
    F = f.field
    if not isinstance(F, PrimeField):
        raise FieldError("splitting_data expects a polynomial over a prime field")
    if f.degree() < 1:
        raise PolyError("polynomial must be nonconstant")
    if f.gcd(f.derivative()).degree() > 0:
        raise PolyError("zero discriminant")
    d = 1
    for k, _ in distinct_degree_factors(f):
        d = lcm(d, k)
    E = F if d == 1 else extension_of(F, d)
    roots = roots_in(f, E, seed)
    if len(roots) != f.degree():  # pragma: no cover - guarded by the degree argument
        raise PolyError("root finding failed to split the polynomial")
    return d, roots


def rational_roots(f: Poly) -> list[Fraction]:
    """Rational roots of a polynomial over Q (by the rational root theorem)."""
    if not isinstance(f.field, RationalField):
        raise FieldError("rational_roots expects a polynomial over Q")
    if f.degree() < 1:
        return []
    den = 1
    for a in f.c:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in f.c]
    # strip zero roots
    roots = []
    while ints and ints[0] == 0:
        ints.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return sorted(roots)
    from sympy import divisors  # integer divisor enumeration

    cands = set()
    for num in divisors(abs(ints[0])):
        for dd in divisors(abs(ints[-1])):
            cands.add(Fraction(num, dd))
            cands.add(Fraction(-num, dd))
    g = Poly([Fraction(v) for v in ints], f.field)
    for r in cands:
        if g(r) == 0:
            roots.append(r)
    return sorted(roots)


def is_field_split(f: Poly) -> bool:
    """True if f has deg f distinct roots in its own base field."""
    F = f.field
    if isinstance(F, RationalField):
        return len(rational_roots(f)) == f.degree()
    if isinstance(F, (PrimeField, ExtensionField)):
        return len(roots_in(f, F)) == f.degree()
    raise FieldError("unsupported field")
