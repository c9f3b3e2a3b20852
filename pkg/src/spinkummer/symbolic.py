"""A field of rational functions in named parameters, backed by sympy.

Used to run the library's generic algorithms with indeterminate curve or
point coefficients, e.g. to derive an equation as a polynomial identity.
Elements are kept in canonical (expanded, cancelled) form so that zero
testing is exact.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

__all__ = ["SymbolicField", "Sym"]


class Sym:
    __slots__ = ("e", "field")

    def __init__(self, e, field: "SymbolicField"):
        self.e = e
        self.field = field

    def _o(self, other):
        if isinstance(other, Sym):
            return other.e
        if isinstance(other, int):
            return sympy.Integer(other)
        if isinstance(other, Fraction):
            return sympy.Rational(other.numerator, other.denominator)
        if isinstance(other, sympy.Expr):
            return other
        return None

    def _wrap(self, e):
        return Sym(sympy.cancel(sympy.expand(e)), self.field)

    def __add__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else self._wrap(self.e + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else self._wrap(self.e - o)

    def __rsub__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else self._wrap(o - self.e)

    def __mul__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else self._wrap(self.e * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return self._wrap(self.e / o)

    def __rtruediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        if self.e == 0:
            raise ZeroDivisionError("division by zero")
        return self._wrap(o / self.e)

    def __neg__(self):
        return Sym(-self.e, self.field)

    def __pow__(self, n: int):
        return self._wrap(self.e**n)

    def __eq__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return sympy.expand(self.e - o) == 0

    def __hash__(self):
        return hash(self.e)

    def __bool__(self):
        return self.e != 0

    def __repr__(self):
        return str(self.e)


class SymbolicField:
    """Q(t_1, ..., t_n) for the given parameter names."""

    characteristic = 0
    degree = 1
    kind = "Sym"

    def __init__(self, names):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        self.names = tuple(names)
        self.symbols = tuple(sympy.Symbol(n) for n in self.names)
        self._zero = Sym(sympy.Integer(0), self)
        self._one = Sym(sympy.Integer(1), self)

    def __call__(self, x) -> Sym:
        if isinstance(x, Sym):
            return x
        if isinstance(x, int):
            return Sym(sympy.Integer(x), self)
        if isinstance(x, Fraction):
            return Sym(sympy.Rational(x.numerator, x.denominator), self)
        if isinstance(x, str):
            return Sym(sympy.expand(sympy.sympify(x, locals=dict(zip(self.names, self.symbols)))), self)
        if isinstance(x, sympy.Expr):
            return Sym(sympy.expand(x), self)
        raise TypeError(f"cannot coerce {x!r} into the symbolic field")

    @property
    def zero(self) -> Sym:
        return self._zero

    @property
    def one(self) -> Sym:
        return self._one

    def gens(self) -> list[Sym]:
        return [Sym(s, self) for s in self.symbols]

    def __eq__(self, other):
        return isinstance(other, SymbolicField) and other.names == self.names

    def __hash__(self):
        return hash(("Sym", self.names))

    def __repr__(self):
        return f"QQ({', '.join(self.names)})"
