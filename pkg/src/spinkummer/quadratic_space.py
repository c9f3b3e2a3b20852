"""Odd hyperelliptic curves and the quadratic space V = k[x]/(f).

V carries the symmetric form psi(a, b) = tau(ab), where tau reads off the
coefficient of x^{2g}.  The straightened basis p_0, ..., p_{2g} has
psi(p_i, p_j) = 1 if i + j = 2g and 0 otherwise, with p_i = x^i for i <= g.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fields import FieldError, QQ, RationalField
from .polynomials import Poly

__all__ = [
    "CurveError",
    "HyperellipticCurve",
    "QuadraticSpace",
    "VElement",
    "straightened_basis",
    "psi_form",
]


class CurveError(ValueError):
    """Raised for invalid curve data."""


class HyperellipticCurve:
    """y^2 = f(x) = x^{2g+1} + c_1 x^{2g} + ... + c_{2g+1}."""

    def __init__(self, coeffs: Sequence, field=QQ, *, validate: bool = True):
        n = len(coeffs)
        if n < 3 or n % 2 == 0:
            raise CurveError("need 2g+1 coefficients c_1..c_{2g+1} with g >= 1")
        if getattr(field, "characteristic", 0) == 2:
            raise CurveError("characteristic 2 is not supported")
        self.field = field
        self.g = (n - 1) // 2
        self.coeffs = tuple(field(c) for c in coeffs)
        # ascending coefficients of f
        self.f = Poly(list(reversed(self.coeffs)) + [field.one], field)
        self._disc = None
        if validate and not self.discriminant():
            raise CurveError("zero discriminant")

    @classmethod
    def from_poly(cls, f: Poly, **kw) -> "HyperellipticCurve":
        if not f.is_monic():
            raise CurveError("f must be monic")
        d = f.degree()
        if d < 3 or d % 2 == 0:
            raise CurveError("f must have odd degree at least 3")
        return cls(list(reversed(f.c[:-1])), f.field, **kw)

    def c(self, i: int):
        """c_i with c_0 = 1 and c_i = 0 beyond the last coefficient."""
        if i == 0:
            return self.field.one
        if 1 <= i <= len(self.coeffs):
            return self.coeffs[i - 1]
        return self.field.zero

    def discriminant(self):
        if self._disc is None:
            self._disc = self.f.discriminant()
        return self._disc

    def height(self) -> int:
        """Max |numerator|, denominator over the coefficients (rational curves)."""
        if not isinstance(self.field, RationalField):
            raise FieldError("height is defined for rational curves")
        h = 1
        for a in self.coeffs:
            a = Fraction(a)
            h = max(h, abs(a.numerator), a.denominator)
        return h

    def base_change(self, field) -> "HyperellipticCurve":
        return HyperellipticCurve([field(c) for c in self.coeffs], field, validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, HyperellipticCurve)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f} over {self.field!r})"


class VElement:
    """A vector of V tagged with the basis its coordinates refer to.

    ``basis`` is ``"B"`` for the power basis 1, x, ..., x^{2g} and ``"P"``
    for the straightened basis.
    """

    __slots__ = ("coords", "basis")

    def __init__(self, coords: Sequence, basis: str):
        if basis not in ("B", "P"):
            raise ValueError("basis tag must be 'B' or 'P'")
        self.coords = list(coords)
        self.basis = basis

    def __repr__(self):
        return f"VElement({self.coords}, {self.basis!r})"

    def __eq__(self, other):
        if not isinstance(other, VElement):
            return NotImplemented
        return self.basis == other.basis and self.coords == other.coords


class QuadraticSpace:
    """V = k[x]/(f) with its straightened basis.

    ``P[i]`` holds p_i in power-basis coordinates and ``Binv[i]`` holds x^i in
    straightened coordinates.
    """

    def __init__(self, curve: HyperellipticCurve):
        self.curve = curve
        self.field = curve.field
        self.g = g = curve.g
        self.n = n = 2 * g + 1
        F = self.field
        half = F.one / 2
        c = curve.c
        P = []
        for i in range(n):
            v = [F.zero] * n
            if i <= g:
                v[i] = F.one
            else:
                k = i - g
                v[i] = F.one
                for t in range(1, 2 * k):
                    v[i - t] = c(t)
                v[g - k] = c(2 * k) * half
            P.append(v)
        self.P = P
        # inverse: x^i in straightened coordinates
        B = []
        for i in range(n):
            v = [F.zero] * n
            if i <= g:
                v[i] = F.one
            else:
                k = i - g
                v[i] = F.one
                for t in range(1, 2 * k):
                    bt = B[i - t]
                    ct = c(t)
                    if ct:
                        v = [a - ct * b for a, b in zip(v, bt)]
                v[g - k] = v[g - k] - c(2 * k) * half
            B.append(v)
        self.Binv = B
        # multiplication by x in straightened coordinates (column j = x p_j)
        self._xcols = [self.to_P(self._times_x_power(P[j])) for j in range(n)]

    # -- coordinate changes ------------------------------------------------

    def to_P(self, v: Sequence) -> list:
        """Power-basis coordinates -> straightened coordinates."""
        F = self.field
        out = [F.zero] * self.n
        for i, a in enumerate(v):
            if a:
                out = [o + a * b for o, b in zip(out, self.Binv[i])]
        return out

    def from_P(self, v: Sequence) -> list:
        """Straightened coordinates -> power-basis coordinates."""
        F = self.field
        out = [F.zero] * self.n
        for i, a in enumerate(v):
            if a:
                out = [o + a * b for o, b in zip(out, self.P[i])]
        return out

    def as_P(self, v: VElement) -> list:
        return list(v.coords) if v.basis == "P" else self.to_P(v.coords)

    def as_B(self, v: VElement) -> list:
        return list(v.coords) if v.basis == "B" else self.from_P(v.coords)

    def poly_to_P(self, a: Poly) -> list:
        """Straightened coordinates of the class of a polynomial modulo f."""
        r = a.divmod(self.curve.f)[1] if a.degree() >= self.n else a
        return self.to_P(r.coeffs(self.n))

    def P_to_poly(self, v: Sequence) -> Poly:
        return Poly(self.from_P(v), self.field)

    # -- products and forms ------------------------------------------------

    def _times_x_power(self, v: Sequence) -> list:
        """x*v in power-basis coordinates, reduced modulo f."""
        F = self.field
        top = v[-1]
        out = [F.zero] + list(v[:-1])
        if top:
            fc = self.curve.f.c
            out = [o - top * fc[i] for i, o in enumerate(out)]
        return out

    def times_x(self, v: Sequence) -> list:
        """x*v for v in straightened coordinates."""
        F = self.field
        out = [F.zero] * self.n
        for j, a in enumerate(v):
            if a:
                out = [o + a * b for o, b in zip(out, self._xcols[j])]
        return out

    def psi(self, a: Sequence, b: Sequence):
        """psi in straightened coordinates: sum a_i b_{2g-i}."""
        F = self.field
        acc = F.zero
        n = self.n
        for i in range(n):
            if a[i] and b[n - 1 - i]:
                acc = acc + a[i] * b[n - 1 - i]
        return acc

    def psi_power(self, a: Sequence, b: Sequence):
        """psi via the definition: coefficient of x^{2g} in a*b mod f."""
        prod = Poly(a, self.field) * Poly(b, self.field)
        return prod.divmod(self.curve.f)[1].coeff(2 * self.g)

    def psi_x(self, a: Sequence, b: Sequence):
        """The form (a, b) -> psi(a, x b) in straightened coordinates."""
        return self.psi(a, self.times_x(b))

    def gram(self) -> list:
        n = self.n
        F = self.field
        return [[F.one if i + j == n - 1 else F.zero for j in range(n)] for i in range(n)]

    def gram_x(self) -> list:
        """Matrix of psi(a, x b) in the straightened basis."""
        return [[self._xcols[j][self.n - 1 - i] for j in range(self.n)] for i in range(self.n)]


def straightened_basis(curve: HyperellipticCurve) -> QuadraticSpace:
    return QuadraticSpace(curve)


def psi_form(space: QuadraticSpace, a: VElement, b: VElement):
    return space.psi(space.as_P(a), space.as_P(b))
