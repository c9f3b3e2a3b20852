"""Command-line interface: thin JSON shells over the library.

Exit codes: 0 success, 2 malformed input, 3 mathematical precondition
failure, 4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

import jsonschema

from .fields import FieldError, PrimeField
from .heights import HeightError, bad_primes, height_report
from .heisenberg import ThetaError, duplication_polys
from .jacobian import MumfordError, cantor_add, cantor_double, enumerate_points, multiply
from .kummer import KummerError, kummer_quartic_g2, membership_and_lift, psi_embed
from .linalg import LinAlgError
from .polynomials import PolyError
from .propsuite import format_report, run_suite
from .quadratic_space import CurveError, QuadraticSpace
from .roots import RootError
from .serialize import (
    SchemaError,
    curve_from_json,
    divisor_from_json,
    divisor_to_json,
    dup_polys_to_json,
    element_from_json,
    element_to_json,
    form_to_json,
    parse_curve_spec,
    spin_vector_to_json,
)
from .spinor import SpinorError, normalize

__all__ = ["JobSpec", "JOB_SCHEMA", "dispatch", "run", "main", "EXIT_OK", "EXIT_SCHEMA", "EXIT_MATH", "EXIT_INTERNAL"]

EXIT_OK, EXIT_SCHEMA, EXIT_MATH, EXIT_INTERNAL = 0, 2, 3, 4

MATH_ERRORS = (
    CurveError, MumfordError, FieldError, PolyError, HeightError, ThetaError,
    KummerError, SpinorError, LinAlgError, RootError, ZeroDivisionError,
)

SUBCOMMANDS = (
    "embed", "add", "double", "mul", "dup-polys", "heights",
    "membership", "enumerate", "kummer-eq", "verify",
)

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "subcommand": {"enum": list(SUBCOMMANDS)},
        "curve": {"oneOf": [{"type": "object"}, {"type": "string"}]},
        "points": {"type": "array", "items": {"type": "object"}},
        "options": {"type": "object"},
    },
    "required": ["subcommand"],
    "additionalProperties": False,
}


@dataclass
class JobSpec:
    subcommand: str
    curve: Any = None
    points: list = dc_field(default_factory=list)
    options: dict = dc_field(default_factory=dict)

    @classmethod
    def from_json(cls, obj) -> "JobSpec":
        try:
            jsonschema.validate(obj, JOB_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise SchemaError(f"invalid job: {exc.message}") from None
        return cls(obj["subcommand"], obj.get("curve"), list(obj.get("points", [])), dict(obj.get("options", {})))


def _curve(job: JobSpec):
    if job.curve is None:
        raise SchemaError(f"{job.subcommand} needs a curve")
    if isinstance(job.curve, str):
        return parse_curve_spec(job.curve)
    return curve_from_json(job.curve)


def _points(job: JobSpec, curve, count: int):
    if len(job.points) != count:
        raise SchemaError(f"{job.subcommand} needs exactly {count} point(s), got {len(job.points)}")
    return [divisor_from_json(P, curve) for P in job.points]


def _int_option(job: JobSpec, name: str, default=None) -> int:
    v = job.options.get(name, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"option {name} must be an integer")
    return v


def _cmd_embed(job):
    curve = _curve(job)
    (D,) = _points(job, curve, 1)
    return spin_vector_to_json(psi_embed(QuadraticSpace(curve), D), curve.field)


def _cmd_add(job):
    curve = _curve(job)
    A, B = _points(job, curve, 2)
    return divisor_to_json(cantor_add(A, B))


def _cmd_double(job):
    curve = _curve(job)
    (D,) = _points(job, curve, 1)
    return divisor_to_json(cantor_double(D))


def _cmd_mul(job):
    curve = _curve(job)
    (D,) = _points(job, curve, 1)
    return divisor_to_json(multiply(D, _int_option(job, "k")))


def _cmd_dup_polys(job):
    curve = _curve(job)
    return dup_polys_to_json(duplication_polys(curve, seed=_int_option(job, "seed", 0)))


def _cmd_heights(job):
    curve = _curve(job)
    (D,) = _points(job, curve, 1)
    n_max = _int_option(job, "n_max", 6)
    places = job.options.get("places")
    if places == "all-bad":
        places = bad_primes(curve)
    elif places is not None:
        if not isinstance(places, list) or not all(p == "inf" or isinstance(p, int) for p in places):
            raise SchemaError('places must be a list of primes and "inf", or "all-bad"')
    rep = height_report(curve, D, n_max=n_max, places=places)
    can = rep.canonical
    return {
        "dagger": rep.dagger,
        "naive": rep.naive,
        "reduction": rep.reduction,
        "canonical": {
            "estimate": can.estimate,
            "iterations": can.iterations,
            "tail_bound": can.tail_bound,
            "complete": can.complete,
            "naive_heights": can.heights,
        },
        "dagger_vector": rep.dagger_vector,
        "naive_vector": rep.naive_vector,
        "local": {
            k: {"epsilon": v.epsilon, "mu": v.mu, "terms": v.terms, "tail_bound": v.tail_bound,
                "epsilon_ord": v.epsilon_ord}
            for k, v in rep.local.items()
        },
        "notes": rep.notes,
    }


def _cmd_membership(job):
    curve = _curve(job)
    coords = job.options.get("coords")
    if not isinstance(coords, list) or len(coords) != 2**curve.g:
        raise SchemaError(f"membership needs options.coords with {2**curve.g} entries")
    s = [element_from_json(a, curve.field) for a in coords]
    v = membership_and_lift(QuadraticSpace(curve), s)
    out = {"on_kummer": v.on_kummer, "rank": v.rank, "square_class": v.square_class,
           "lifts": v.lifts, "reason": v.reason}
    out["lambda"] = None if v.lam is None else element_to_json(v.lam, curve.field)
    return out


def _cmd_enumerate(job):
    curve = _curve(job)
    if not isinstance(curve.field, PrimeField):
        raise SchemaError("enumerate needs a curve over F_p")
    space = QuadraticSpace(curve)
    pts = enumerate_points(curve, budget=_int_option(job, "budget", 10**6))
    images = {tuple(int(a) for a in normalize(psi_embed(space, D), curve.field)) for D in pts}
    return {"order": len(pts), "kummer_points": len(images), "points": [divisor_to_json(D) for D in pts]}


def _cmd_kummer_eq(job):
    if job.curve is None:
        return {"variables": ["x1", "x2", "x3", "x4"], "coefficients": "generic in c1..c5",
                "form": form_to_json(kummer_quartic_g2())}
    curve = _curve(job)
    if curve.g != 2:
        raise KummerError("kummer-eq is for genus 2")
    return {"variables": ["x1", "x2", "x3", "x4"], "form": form_to_json(kummer_quartic_g2(curve), curve.field)}


def _cmd_verify(job):
    seed = _int_option(job, "seed", 0)
    genera = job.options.get("g", [1, 2, 3])
    primes = job.options.get("p", [5, 7, 11, 13])
    genera = [genera] if isinstance(genera, int) else genera
    primes = [primes] if isinstance(primes, int) else primes
    n_points = _int_option(job, "n_points", 100)
    results = run_suite(genera=tuple(genera), primes=tuple(primes), n_points=n_points, seed=seed)
    return {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "checks": [
            {"name": r.name, "g": r.g, "p": r.p, "cases": r.cases, "passed": r.passed,
             "failures": r.failures[:5]}
            for r in results
        ],
        "transcript": format_report(results),
    }


_HANDLERS = {
    "embed": _cmd_embed,
    "add": _cmd_add,
    "double": _cmd_double,
    "mul": _cmd_mul,
    "dup-polys": _cmd_dup_polys,
    "heights": _cmd_heights,
    "membership": _cmd_membership,
    "enumerate": _cmd_enumerate,
    "kummer-eq": _cmd_kummer_eq,
    "verify": _cmd_verify,
}


def dispatch(job) -> tuple[int, Any]:
    """Run a job; returns (exit code, JSON-ready payload or error diagnostic)."""
    try:
        if not isinstance(job, JobSpec):
            job = JobSpec.from_json(job)
        payload = _HANDLERS[job.subcommand](job)
        if job.subcommand == "verify" and not payload["passed"]:
            return EXIT_INTERNAL, payload
        return EXIT_OK, payload
    except SchemaError as exc:
        return EXIT_SCHEMA, {"error": "schema", "message": str(exc)}
    except MATH_ERRORS as exc:
        return EXIT_MATH, {"error": "math", "type": type(exc).__name__, "message": str(exc)}
    except ValueError as exc:
        return EXIT_MATH, {"error": "math", "type": type(exc).__name__, "message": str(exc)}
    except AssertionError as exc:
        return EXIT_INTERNAL, {"error": "internal", "message": str(exc)}


# ---------------------------------------------------------------------------
# Rendering and argument parsing
# ---------------------------------------------------------------------------


def _default(o):
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, default=_default)


def render_table(payload) -> str:
    if isinstance(payload, dict) and "transcript" in payload:
        return payload["transcript"]
    rows = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            rows.append((prefix, json.dumps(obj, default=_default)))

    walk("", payload)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinkummer", description=__doc__.splitlines()[0])
    out = ap.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    out.add_argument("--table", dest="fmt", action="store_const", const="table")
    ap.add_argument("--output", "-o", help="write output to this file")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def with_curve(p, npoints=0):
        p.add_argument("--curve", required=True, help='curve JSON, "@file", or shorthand such as "x^5+3x+1 over Q"')
        for i in range(npoints):
            p.add_argument(f"--point{'' if npoints == 1 else i + 1}", required=True,
                           help='divisor JSON {"U": [...], "R": [...]} or "@file"')
        return p

    with_curve(sub.add_parser("embed", help="projective Kummer coordinates of a point"), 1)
    with_curve(sub.add_parser("add", help="Cantor sum of two points"), 2)
    with_curve(sub.add_parser("double", help="Cantor doubling"), 1)
    p = with_curve(sub.add_parser("mul", help="scalar multiple"), 1)
    p.add_argument("k", type=int)
    p = with_curve(sub.add_parser("dup-polys", help="duplication quartics"))
    p.add_argument("--seed", type=int, default=0)
    p = with_curve(sub.add_parser("heights", help="height report for a point over Q"), 1)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--places", default=None, help='comma list of primes and "inf", or "all-bad"')
    p = with_curve(sub.add_parser("membership", help="Kummer membership and lift test"))
    p.add_argument("--coords", required=True, help="JSON list of 2^g coordinates")
    p = with_curve(sub.add_parser("enumerate", help="all points of J(F_p)"))
    p.add_argument("--budget", type=int, default=10**6)
    p = sub.add_parser("kummer-eq", help="genus 2 Kummer quartic")
    p.add_argument("--curve", default=None)
    p = sub.add_parser("verify", help="property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--g", type=int, action="append")
    p.add_argument("--p", type=int, action="append")
    p.add_argument("--n-points", type=int, default=100)
    p = sub.add_parser("job", help="run a JobSpec JSON")
    p.add_argument("spec", help='JobSpec JSON or "@file"')
    return ap


def _curve_arg(text):
    if text is None:
        return None
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    text = text.strip()
    return _load_json_arg(text) if text.startswith("{") else text


def _job_from_args(a) -> dict:
    if a.cmd == "job":
        return _load_json_arg(a.spec)
    job: dict = {"subcommand": a.cmd, "options": {}}
    curve = _curve_arg(getattr(a, "curve", None))
    if curve is not None:
        job["curve"] = curve
    pts = [getattr(a, k) for k in ("point", "point1", "point2") if getattr(a, k, None)]
    if pts:
        job["points"] = [_load_json_arg(t) for t in pts]
    o = job["options"]
    if a.cmd == "mul":
        o["k"] = a.k
    elif a.cmd == "dup-polys":
        o["seed"] = a.seed
    elif a.cmd == "heights":
        o["n_max"] = a.n_max
        if a.places == "all-bad":
            o["places"] = "all-bad"
        elif a.places:
            o["places"] = [t if t == "inf" else int(t) for t in a.places.split(",")]
    elif a.cmd == "membership":
        o["coords"] = _load_json_arg(a.coords)
    elif a.cmd == "enumerate":
        o["budget"] = a.budget
    elif a.cmd == "verify":
        o.update(seed=a.seed, n_points=a.n_points)
        if a.g:
            o["g"] = a.g
        if a.p:
            o["p"] = a.p
    return job


def run(argv=None) -> tuple[int, str]:
    """Parse arguments and dispatch; returns (exit code, rendered output)."""
    a = _build_parser().parse_args(argv)
    try:
        job = _job_from_args(a)
    except (SchemaError, ValueError, OSError) as exc:
        code, payload = EXIT_SCHEMA, {"error": "schema", "message": str(exc)}
    else:
        code, payload = dispatch(job)
    text = render_table(payload) if a.fmt == "table" else render_json(payload)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
