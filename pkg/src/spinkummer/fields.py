"""Exact base fields: the rationals, prime fields F_p and extensions F_{p^d}.

Elements of Q are plain ``fractions.Fraction`` objects.  Elements of finite
fields are small immutable wrappers supporting the usual operators, mixed
freely with Python ints.  Every field object exposes the same minimal
interface (``zero``, ``one``, ``__call__`` for coercion, ``is_square``,
``random``) so the algebra above it is written once.
"""

from __future__ import annotations

import math
import random as _random
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "FieldError",
    "RationalField",
    "PrimeField",
    "ExtensionField",
    "QQ",
    "GF",
    "is_prime",
    "squarefree_part",
]


class FieldError(ValueError):
    """Raised for invalid field constructions or undefined field operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def squarefree_part(q: Fraction) -> int:
    """Canonical representative of the square class of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise FieldError("zero has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


class RationalField:
    """The field of rational numbers; elements are ``Fraction`` instances."""

    characteristic = 0
    degree = 1
    kind = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def is_square(self, a) -> bool:
        a = self(a)
        if a < 0:
            return False
        return _is_int_square(a.numerator) and _is_int_square(a.denominator)

    def sqrt(self, a) -> Fraction:
        a = self(a)
        if not self.is_square(a):
            raise FieldError(f"{a} is not a square in Q")
        return Fraction(math.isqrt(a.numerator), math.isqrt(a.denominator))

    def square_class(self, a) -> int:
        return squarefree_part(self(a))

    def random(self, rng: _random.Random, bound: int = 10) -> Fraction:
        den = rng.randint(1, bound)
        return Fraction(rng.randint(-bound, bound), den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


def _is_int_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


QQ = RationalField()


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------


class Fp:
    """Element of a prime field."""

    __slots__ = ("v", "field")

    def __init__(self, v: int, field: "PrimeField"):
        self.v = v
        self.field = field

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise FieldError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.field.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((self.v + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((self.v - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((o - self.v) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v % self.field.p, self.field)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return Fp(pow(self.v, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.field.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.field.p) % self.field.p, self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o % self.field.p, self.field) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.field.p == other.field.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.field.p == 0
        if isinstance(other, FqElement):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    """The prime field F_p for an odd prime p."""

    degree = 1
    kind = "Fp"

    def __init__(self, p: int):
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self._zero = Fp(0, self)
        self._one = Fp(1, self)

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.field.p != self.p:
                raise FieldError("element of a different prime field")
            return x
        if isinstance(x, int):
            return Fp(x % self.p, self)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has denominator divisible by {self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p) % self.p, self)
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self) -> Fp:
        return self._zero

    @property
    def one(self) -> Fp:
        return self._one

    def elements(self) -> Iterator[Fp]:
        for v in range(self.p):
            yield Fp(v, self)

    def is_square(self, a) -> bool:
        a = self(a)
        return a.v == 0 or pow(a.v, (self.p - 1) // 2, self.p) == 1

    def square_class(self, a) -> int:
        """1 for nonzero squares, -1 for non-squares."""
        a = self(a)
        if a.v == 0:
            raise FieldError("zero has no square class")
        return 1 if self.is_square(a) else -1

    def sqrt(self, a) -> Fp:
        a = self(a)
        if a.v == 0:
            return self.zero
        if not self.is_square(a):
            raise FieldError(f"{a} is not a square in F_{self.p}")
        return Fp(_tonelli_shanks(a.v, self.p), self)

    def random(self, rng: _random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _tonelli_shanks(n: int, p: int) -> int:
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# F_{p^d}
# ---------------------------------------------------------------------------


def _poly_mulmod_int(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> tuple:
    """Multiply coefficient lists modulo a monic ``mod`` of degree d over F_p."""
    d = len(mod) - 1
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k] % p
        if c:
            for t in range(d):
                prod[k - d + t] -= c * mod[t]
    return tuple(x % p for x in prod[:d])


def _int_poly_is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p given as ascending ints."""
    d = len(mod) - 1
    if d == 1:
        return True

    def powmod_x(e: int) -> tuple:
        result = (1,) + (0,) * (d - 1)
        base = (0, 1) + (0,) * (d - 2)
        while e:
            if e & 1:
                result = _poly_mulmod_int(result, base, mod, p)
            base = _poly_mulmod_int(base, base, mod, p)
            e >>= 1
        return result

    x = (0, 1) + (0,) * (d - 2)
    primes = [q for q in range(2, d + 1) if d % q == 0 and is_prime(q)]
    from .polynomials import Poly  # local import keeps modules decoupled

    F = PrimeField(p)
    fpoly = Poly([F(c) for c in mod], F)
    for q in primes:
        h = powmod_x(p ** (d // q))
        diff = [(h[i] - x[i]) % p for i in range(d)]
        g = fpoly.gcd(Poly([F(c) for c in diff], F))
        if g.degree() != 0:
            return False
    return powmod_x(p**d) == x


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, d: int) -> tuple:
    """Smallest monic irreducible polynomial of degree d over F_p.

    Candidates x^d + c_{d-1}x^{d-1} + ... + c_0 are ordered by the integer
    c_0 + c_1 p + ... + c_{d-1} p^{d-1}, i.e. lexicographically on the
    coefficient tuple read from the top coefficient down.
    """
    if d < 1:
        raise FieldError("extension degree must be positive")
    for n in range(p**d):
        coeffs = []
        m = n
        for _ in range(d):
            coeffs.append(m % p)
            m //= p
        if coeffs[0] == 0 and d > 1:
            continue
        mod = tuple(coeffs) + (1,)
        if _int_poly_is_irreducible(mod, p):
            return mod
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


def _powmod_x_int(e: int, mod: Sequence[int], p: int) -> tuple:
    d = len(mod) - 1
    result = (1,) + (0,) * (d - 1)
    base = ((0, 1) + (0,) * (d - 2)) if d > 1 else (-mod[0] % p,)
    while e:
        if e & 1:
            result = _poly_mulmod_int(result, base, mod, p)
        base = _poly_mulmod_int(base, base, mod, p)
        e >>= 1
    return result


def _eval_at_int(poly: Sequence[int], a: Sequence[int], mod: Sequence[int], p: int) -> tuple:
    """poly(a) modulo mod, with poly given by ascending integer coefficients."""
    d = len(mod) - 1
    acc = (0,) * d
    for c in reversed(poly):
        acc = _poly_mulmod_int(acc, a, mod, p)
        acc = ((acc[0] + c) % p,) + acc[1:]
    return acc


@lru_cache(maxsize=None)
def conway_polynomial(p: int, d: int, budget: int = 1000) -> tuple | None:
    """The Conway polynomial of degree d over F_p, or None past ``budget``.

    Writing f = x^d + sum (-1)^(d-i) a_i x^i, candidates are visited in
    lexicographic order of (a_{d-1}, ..., a_0).  The first one that is
    primitive and whose root maps to a root of the Conway polynomial of
    every proper subfield under the norm power is returned.
    """
    import sympy

    if d < 1:
        raise FieldError("extension degree must be positive")
    q = p**d - 1
    order_primes = list(sympy.factorint(q))
    subs = []
    for m in sympy.divisors(d)[:-1]:
        sub = conway_polynomial(p, m, budget)
        if sub is None:
            return None
        subs.append((q // (p**m - 1), sub))
    one = (1,) + (0,) * (d - 1)
    # the norm of a root is the Conway primitive root of F_p, which fixes c_0
    c0 = None if d == 1 else (-1) ** d * -subs[0][1][0] % p
    tried = 0
    for n in range(p**d):
        # a_{d-1} is the most significant digit
        a = [(n // p ** (d - 1 - i)) % p for i in range(d)]
        mod = tuple((-1) ** (d - i) * a[d - 1 - i] % p for i in range(d)) + (1,)
        if mod[0] == 0 or (c0 is not None and mod[0] != c0):
            continue
        tried += 1
        if tried > budget:
            return None
        if any(any(_eval_at_int(sub, _powmod_x_int(e, mod, p), mod, p)) for e, sub in subs):
            continue
        if _powmod_x_int(q, mod, p) != one:
            continue
        if any(_powmod_x_int(q // r, mod, p) == one for r in order_primes):
            continue
        if d > 1 and not _int_poly_is_irreducible(mod, p):  # pragma: no cover - primitive implies irreducible
            continue
        return mod
    raise FieldError("no Conway polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def default_modulus(p: int, d: int) -> tuple:
    """Conway polynomial when it is found within the search budget, else the
    smallest irreducible polynomial."""
    return conway_polynomial(p, d) or smallest_irreducible(p, d)


class FqElement:
    """Element of F_{p^d}: a coefficient tuple in the fixed power basis."""

    __slots__ = ("c", "field")

    def __init__(self, c: tuple, field: "ExtensionField"):
        self.c = c
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixing elements of different extension fields")
            return other.c
        if isinstance(other, (int, Fp, Fraction)):
            return self.field(other).c
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElement(tuple((a + b) % p for a, b in zip(self.c, o)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElement(tuple((a - b) % p for a, b in zip(self.c, o)), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElement(tuple((b - a) % p for a, b in zip(self.c, o)), self.field)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FqElement(tuple(a * other % p for a in self.c), self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        return FqElement(_poly_mulmod_int(self.c, o, F.modulus, F.p), F)

    __rmul__ = __mul__

    def __neg__(self):
        p = self.field.p
        return FqElement(tuple(-a % p for a in self.c), self.field)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        F = self.field
        result = F.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FqElement":
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero in F_q")
        F = self.field
        return self ** (F.order - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self * pow(other, -1, self.field.p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * FqElement(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElement(o, self.field) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.c == other.c and self.field == other.field
        if isinstance(other, (int, Fp, Fraction)):
            try:
                return self.c == self.field(other).c
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash((self.field.p, self.c[0]))
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def frobenius(self, k: int = 1) -> "FqElement":
        return self ** (self.field.p**k)

    def sort_key(self) -> int:
        p = self.field.p
        return sum(a * p**i for i, a in enumerate(self.c))

    def to_base(self) -> Fp:
        """Return the element as an F_p element; fails if it is not in F_p."""
        if any(self.c[1:]):
            raise FieldError("element does not lie in the prime field")
        return self.field.base(self.c[0])

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*t^{i}" if i > 1 else f"{a}*t")
        return "+".join(terms) if terms else "0"


class ExtensionField:
    """F_{p^d} realised as F_p[t]/(m(t)), by default with m the Conway polynomial."""

    kind = "Fq"

    def __init__(self, p: int, d: int, modulus: Sequence[int] | None = None):
        self.base = PrimeField(p)
        self.p = p
        self.d = d
        self.degree = d
        self.characteristic = p
        self.order = p**d
        if modulus is None:
            modulus = default_modulus(p, d)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree d")
        self.modulus = modulus
        self._zero = FqElement((0,) * d, self)
        self._one = FqElement((1,) + (0,) * (d - 1), self)

    def __call__(self, x) -> FqElement:
        if isinstance(x, FqElement):
            if x.field != self:
                raise FieldError("element of a different extension field")
            return x
        if isinstance(x, Fp):
            if x.field.p != self.p:
                raise FieldError("prime field mismatch")
            return FqElement((x.v,) + (0,) * (self.d - 1), self)
        if isinstance(x, int):
            return FqElement((x % self.p,) + (0,) * (self.d - 1), self)
        if isinstance(x, Fraction):
            return self(self.base(x))
        if isinstance(x, (tuple, list)):
            c = [int(v) % self.p for v in x]
            if len(c) > self.d:
                raise FieldError("too many coefficients")
            return FqElement(tuple(c + [0] * (self.d - len(c))), self)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}^{self.d}")

    @property
    def zero(self) -> FqElement:
        return self._zero

    @property
    def one(self) -> FqElement:
        return self._one

    @property
    def gen(self) -> FqElement:
        if self.d == 1:
            return self(-self.modulus[0])
        return self((0, 1))

    def is_square(self, a) -> bool:
        a = self(a)
        return not a or a ** ((self.order - 1) // 2) == self.one

    def square_class(self, a) -> int:
        a = self(a)
        if not a:
            raise FieldError("zero has no square class")
        return 1 if self.is_square(a) else -1

    def trace(self, a) -> Fp:
        a = self(a)
        s = self.zero
        y = a
        for _ in range(self.d):
            s = s + y
            y = y ** self.p
        return s.to_base()

    def trace_vector(self) -> tuple:
        """Integers t_i with tr(sum a_i t^i) = sum a_i t_i mod p."""
        out = []
        for i in range(self.d):
            e = [0] * self.d
            e[i] = 1
            out.append(self.trace(self(e)).v)
        return tuple(out)

    def random(self, rng: _random.Random) -> FqElement:
        return FqElement(tuple(rng.randrange(self.p) for _ in range(self.d)), self)

    def elements(self) -> Iterator[FqElement]:
        for n in range(self.order):
            c = []
            for _ in range(self.d):
                c.append(n % self.p)
                n //= self.p
            yield FqElement(tuple(c), self)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Fq", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.d})"


@lru_cache(maxsize=None)
def GF(p: int, d: int = 1):
    """Return F_p (d = 1) or the canonical model of F_{p^d}."""
    if d == 1:
        return PrimeField(p)
    return ExtensionField(p, d)


@lru_cache(maxsize=None)
def _extension(p: int, d: int) -> ExtensionField:
    return ExtensionField(p, d)


def extension_of(field, d: int):
    """Degree-d extension of a prime field, as an ``ExtensionField``."""
    if not isinstance(field, PrimeField):
        raise FieldError("extensions are only built over prime fields")
    return _extension(field.p, d)
