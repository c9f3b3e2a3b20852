"""JSON interchange for curves, divisors, spin vectors and duplication quartics.

Rationals are strings "num/den", F_p elements are integers in 0..p-1 and
F_{p^d} elements are coefficient lists in the fixed modulus.  Polynomials
are ascending coefficient lists.  Curves may also be given in shorthand,
e.g. "x^9+2x^3+x+3 over F5" or "g=2; f=x^5+3x+1; field=Q".
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Sequence

import jsonschema
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .fields import QQ, ExtensionField, GF, PrimeField, RationalField
from .jacobian import MumfordDivisor, validate_mumford
from .polynomials import Poly
from .quadratic_space import HyperellipticCurve

__all__ = [
    "SchemaError",
    "CURVE_SCHEMA",
    "DIVISOR_SCHEMA",
    "element_to_json",
    "element_from_json",
    "field_to_json",
    "field_from_json",
    "curve_to_json",
    "curve_from_json",
    "parse_polynomial",
    "parse_curve_spec",
    "divisor_to_json",
    "divisor_from_json",
    "spin_vector_to_json",
    "monomial_name",
    "dup_polys_to_json",
    "form_to_json",
]


class SchemaError(ValueError):
    """Input that does not match the expected JSON shape."""


_scalar = {"oneOf": [{"type": "integer"}, {"type": "string"}]}
_poly = {"oneOf": [{"type": "array", "items": _scalar}, {"type": "string"}]}

FIELD_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["Q", "Fp"]},
        "p": {"type": "integer", "minimum": 3},
    },
    "required": ["kind"],
    "if": {"properties": {"kind": {"const": "Fp"}}},
    "then": {"required": ["kind", "p"]},
}

CURVE_SCHEMA = {
    "type": "object",
    "properties": {
        "g": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "items": _scalar, "minItems": 3},
        "field": FIELD_SCHEMA,
    },
    "required": ["coeffs"],
}

DIVISOR_SCHEMA = {
    "type": "object",
    "properties": {"U": _poly, "V": _poly, "R": _poly},
    "required": ["U", "R"],
}


def _validate(obj, schema, what: str):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid {what}: {exc.message}") from None


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------


def element_to_json(a, field) -> Any:
    if isinstance(field, RationalField):
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"
    if isinstance(field, PrimeField):
        return int(field(a))
    if isinstance(field, ExtensionField):
        return list(field(a).c)
    raise SchemaError(f"cannot serialise elements of {field!r}")


def element_from_json(x, field):
    try:
        if isinstance(field, RationalField):
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise SchemaError(f"rational must be an integer or 'num/den' string, got {x!r}")
            return Fraction(x)
        if isinstance(field, PrimeField):
            if isinstance(x, str):
                return field(Fraction(x))
            if isinstance(x, bool) or not isinstance(x, int):
                raise SchemaError(f"F_p element must be an integer, got {x!r}")
            return field(x)
        if isinstance(field, ExtensionField):
            return field(list(x) if isinstance(x, list) else int(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad field element {x!r}: {exc}") from None
    raise SchemaError(f"unsupported field {field!r}")


def field_to_json(field) -> dict:
    if isinstance(field, RationalField):
        return {"kind": "Q"}
    if isinstance(field, PrimeField):
        return {"kind": "Fp", "p": field.p}
    if isinstance(field, ExtensionField):
        return {"kind": "Fq", "p": field.p, "d": field.d, "modulus": list(field.modulus)}
    raise SchemaError(f"cannot serialise field {field!r}")


def field_from_json(obj) -> Any:
    _validate(obj, FIELD_SCHEMA, "field")
    if obj["kind"] == "Q":
        return QQ
    return GF(obj["p"])


# ---------------------------------------------------------------------------
# Polynomials and curves
# ---------------------------------------------------------------------------

_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)
_X = sympy.Symbol("x")


def parse_polynomial(text: str, field) -> Poly:
    """Parse a univariate polynomial in x such as "x^5+3x+1"."""
    if not re.fullmatch(r"[0-9x+\-*/^ ().]+", text):
        raise SchemaError(f"malformed polynomial {text!r}")
    try:
        expr = parse_expr(text, local_dict={"x": _X}, transformations=_TRANSFORMS)
        sp = sympy.Poly(expr, _X)
    except (SyntaxError, TypeError, sympy.SympifyError, sympy.PolynomialError) as exc:
        raise SchemaError(f"malformed polynomial {text!r}: {exc}") from None
    coeffs = [sympy.Rational(c) for c in reversed(sp.all_coeffs())]
    return Poly([field(Fraction(int(c.p), int(c.q))) for c in coeffs], field)


def _parse_field_name(text: str):
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:F|GF)_?\(?(\d+)\)?", t)
    if m:
        return GF(int(m.group(1)))
    raise SchemaError(f"unknown field {text!r}")


def parse_curve_spec(text: str) -> HyperellipticCurve:
    """Curve from JSON text or shorthand ("f over F", "g=..; f=..; field=..")."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return curve_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"malformed curve JSON: {exc}") from None
    field = QQ
    g = None
    if ";" in text or "=" in text:
        parts = dict()
        for item in text.split(";"):
            if not item.strip():
                continue
            if "=" not in item:
                raise SchemaError(f"malformed curve shorthand {text!r}")
            k, v = item.split("=", 1)
            parts[k.strip()] = v.strip()
        if "f" not in parts:
            raise SchemaError("curve shorthand needs f=...")
        field = _parse_field_name(parts.get("field", "Q"))
        ftext = parts["f"]
        if "g" in parts:
            try:
                g = int(parts["g"])
            except ValueError:
                raise SchemaError(f"bad genus {parts['g']!r}") from None
    else:
        m = re.fullmatch(r"(.*?)\s+over\s+(\S+)", text)
        if m:
            ftext, field = m.group(1), _parse_field_name(m.group(2))
        else:
            ftext = text
    f = parse_polynomial(ftext, field)
    curve = HyperellipticCurve.from_poly(f)
    if g is not None and curve.g != g:
        raise SchemaError(f"stated genus {g} does not match deg f = {f.degree()}")
    return curve


def curve_to_json(curve: HyperellipticCurve) -> dict:
    return {
        "g": curve.g,
        "coeffs": [element_to_json(c, curve.field) for c in curve.coeffs],
        "field": field_to_json(curve.field),
    }


def curve_from_json(obj) -> HyperellipticCurve:
    _validate(obj, CURVE_SCHEMA, "curve")
    field = field_from_json(obj.get("field", {"kind": "Q"}))
    coeffs = [element_from_json(c, field) for c in obj["coeffs"]]
    if len(coeffs) % 2 == 0:
        raise SchemaError("curve needs an odd number 2g+1 of coefficients")
    if "g" in obj and 2 * obj["g"] + 1 != len(coeffs):
        raise SchemaError(f"g = {obj['g']} needs {2 * obj['g'] + 1} coefficients")
    return HyperellipticCurve(coeffs, field)


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------


def _poly_from_json(x, field) -> Poly:
    if isinstance(x, str):
        return parse_polynomial(x, field)
    return Poly([element_from_json(c, field) for c in x], field)


def divisor_to_json(D: MumfordDivisor) -> dict:
    F = D.field
    return {k: [element_to_json(c, F) for c in p.c] for k, p in (("U", D.U), ("V", D.V), ("R", D.R))}


def divisor_from_json(obj, curve: HyperellipticCurve) -> MumfordDivisor:
    """Mumford triple from JSON; V may be omitted and is then (f - R^2) / U."""
    _validate(obj, DIVISOR_SCHEMA, "divisor")
    F = curve.field
    U = _poly_from_json(obj["U"], F)
    R = _poly_from_json(obj["R"], F)
    if "V" in obj:
        V = _poly_from_json(obj["V"], F)
    else:
        if U.is_zero() or not U.is_monic():
            V = Poly([], F)
        else:
            V, rem = (curve.f - R * R).divmod(U)
            if not rem.is_zero():
                V = Poly([], F)  # rejected below with the Mumford diagnostic
    return validate_mumford(curve, U, V, R)


# ---------------------------------------------------------------------------
# Spin vectors and forms
# ---------------------------------------------------------------------------


def spin_vector_to_json(s: Sequence, field, projective: bool = True) -> dict:
    return {"coords": [element_to_json(a, field) for a in s], "projective": projective}


def monomial_name(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def dup_polys_to_json(dp) -> dict:
    polys = []
    for k in range(len(dp.coeffs)):
        polys.append({monomial_name(e): element_to_json(c, dp.field) for e, c in dp.terms(k)})
    return {
        "g": dp.g,
        "field": field_to_json(dp.field),
        "ordering": "grevlex",
        "polys": polys,
        "provenance": dp.provenance,
    }


def form_to_json(form: dict, field=None) -> dict:
    """Homogeneous form {exponents: coefficient} as an ordered name -> coefficient map."""

    def key(e):
        return (sum(e), tuple(-x for x in reversed(e)))

    out = {}
    for e in sorted(form, key=key, reverse=True):
        c = form[e]
        out[monomial_name(e)] = str(c) if field is None else element_to_json(c, field)
    return out
