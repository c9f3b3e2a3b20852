"""Seeded property suite cross-checking the spinor side against Cantor arithmetic.

Each check runs on one (g, p) pair with a deterministic random curve and
returns the number of cases examined together with any failures.  Checks:

  a  Psi(-P) = Psi(P)
  b  membership rank <= 1 on Psi images; lift verdicts against enumeration (g <= 2)
  c  beta(s, t) = 0 exactly when the annihilators meet
  d  frame -> pure spinor -> annihilator -> frame round trip
  e  Heisenberg identities M_I^2 = r, M_{I^c} = M_I, M_B = 1, beta(M_I inf, inf)
  f  delta(Psi(P)) = Psi(2P) projectively
  g  x_1(M_T Psi(P)) / x_M(Psi(P)) = Res(U_P, U_T)
  h  quadric ideal dimension and vanishing on Psi images
  i  rank of the span of the forms q_T
"""

from __future__ import annotations

import os
import random as _random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Callable

from . import linalg
from .fields import GF
from .heisenberg import (
    ThetaContext,
    coordinate_resultant,
    duplication_polys,
    heisenberg_matrix,
    q_form,
    split_model,
)
from .jacobian import (
    MumfordDivisor,
    affine_point,
    cantor_add,
    cantor_double,
    enumerate_points,
    identity,
    negate,
    random_point,
    validate_mumford,
)
from .kummer import eval_form, kummer_quartic_g2, membership_and_lift, psi_embed
from .polynomials import Poly, splitting_data
from .quadratic_space import CurveError, HyperellipticCurve, QuadraticSpace
from .spinor import (
    IsotropicFrame,
    annihilator,
    beta_form,
    clifford_act,
    eval_quadric,
    frame_from_spinor,
    frame_from_subspace,
    frame_to_subspace,
    infinity,
    normalize,
    proj_equal,
    pure_spinor_from_frame,
    quadric_ideal,
    quadric_monomials,
)

__all__ = ["CheckResult", "SuiteContext", "CHECKS", "suite_curve", "run_suite", "format_report"]


@dataclass
class CheckResult:
    name: str
    g: int
    p: int
    cases: int
    failures: list = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


def suite_curve(g: int, p: int, rng: _random.Random) -> HyperellipticCurve:
    """Random curve over F_p with nonzero discriminant and p not dividing the splitting degree."""
    F = GF(p)
    while True:
        coeffs = [F.random(rng) for _ in range(2 * g + 1)]
        try:
            C = HyperellipticCurve(coeffs, F)
        except CurveError:
            continue
        d, _ = splitting_data(C.f)
        if d % p:
            return C


class SuiteContext:
    """Shared, lazily built data for one (g, p, seed)."""

    def __init__(self, g: int, p: int, seed: int, n_points: int):
        self.g, self.p, self.seed, self.n_points = g, p, seed, n_points
        self.rng = _random.Random(f"{seed}:{g}:{p}")
        self.F = GF(p)
        self.curve = suite_curve(g, p, self.rng)
        self.space = QuadraticSpace(self.curve)
        self.points = [random_point(self.curve, self.rng) for _ in range(n_points)]
        self._split = None

    def rng_for(self, name: str) -> _random.Random:
        return _random.Random(f"{self.seed}:{self.g}:{self.p}:{name}")

    @property
    def split(self):
        """(extension field, roots, quadratic space over it, theta context)."""
        if self._split is None:
            E, roots, _ = split_model(self.curve)
            spaceE = self.space if E == self.F else QuadraticSpace(self.curve.base_change(E))
            self._split = (E, roots, spaceE, ThetaContext(spaceE, roots))
        return self._split


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_negation(ctx: SuiteContext):
    fails = []
    for P in ctx.points:
        if psi_embed(ctx.space, P) != psi_embed(ctx.space, negate(P)):
            fails.append(repr(P))
    return len(ctx.points), fails


def _kummer_membership_g_le_2(ctx: SuiteContext):
    """Compare verdicts on every point of P(S) with the image of J(F_p)."""
    F, g, space = ctx.F, ctx.g, ctx.space
    image = {tuple(normalize(psi_embed(space, P), F)) for P in enumerate_points(ctx.curve)}
    quartic = kummer_quartic_g2(ctx.curve) if g == 2 else None
    fails = []
    cases = 0
    N = 2**g
    # all points of P^{N-1}(F_p), first nonzero coordinate 1
    pts = []
    for lead in range(N):
        def rec(k, acc):
            if k == N:
                pts.append(acc)
                return
            for a in F.elements():
                rec(k + 1, acc + [a])
        rec(lead + 1, [F.zero] * lead + [F.one])
    for s in pts:
        on = quartic is None or not eval_form(quartic, s, F)
        v = membership_and_lift(space, s)
        cases += 1
        if v.on_kummer != on:
            fails.append(f"membership mismatch at {s}")
        elif on and v.lifts != (tuple(s) in image):
            fails.append(f"lift mismatch at {s}: {v}")
    return cases, fails


def check_membership(ctx: SuiteContext):
    fails = []
    cases = 0
    for P in ctx.points:
        v = membership_and_lift(ctx.space, psi_embed(ctx.space, P))
        cases += 1
        if not (v.on_kummer and v.lifts and v.rank is not None and v.rank <= 1):
            fails.append(f"{P}: {v}")
    if ctx.g <= 2:
        c, f = _kummer_membership_g_le_2(ctx)
        cases += c
        fails.extend(f)
    return cases, fails


def _random_pure(ctx: SuiteContext, rng):
    g = ctx.g
    J = [j for j in range(g + 1, 2 * g + 1) if rng.random() < 0.5]
    return pure_spinor_from_frame(ctx.space, IsotropicFrame.random(g, ctx.F, rng, J))


def check_incidence(ctx: SuiteContext):
    rng = ctx.rng_for("incidence")
    F, space = ctx.F, ctx.space
    fails = []
    n = max(ctx.n_points, 50)
    for k in range(n):
        s = _random_pure(ctx, rng)
        if k % 2:
            t = _random_pure(ctx, rng)
        else:
            # w.s for isotropic w is pure with annihilator (L(s) ∩ w^perp) + <w>
            w = frame_to_subspace(space, IsotropicFrame.random(ctx.g, F, rng))[0]
            t = clifford_act(space, w, s)
            if not any(t):
                t = _random_pure(ctx, rng)
        L, M = annihilator(space, s), annihilator(space, t)
        inter = linalg.intersection_dim(L, M, F)
        if (beta_form(s, t, F) == F.zero) != (inter > 0):
            fails.append(f"beta/incidence mismatch: {s} {t}")
    return n, fails


def check_round_trip(ctx: SuiteContext):
    rng = ctx.rng_for("roundtrip")
    g, F, space = ctx.g, ctx.F, ctx.space
    fails = []
    n = max(ctx.n_points, 50)
    for _ in range(n):
        J = [j for j in range(g + 1, 2 * g + 1) if rng.random() < 0.5]
        fr = IsotropicFrame.random(g, F, rng, J)
        s = pure_spinor_from_frame(space, fr)
        L = annihilator(space, s)
        if len(L) != g:
            fails.append(f"annihilator dimension {len(L)} for {fr}")
            continue
        if linalg.rank(L + frame_to_subspace(space, fr), F) != g:
            fails.append(f"annihilator differs from frame subspace for {fr}")
            continue
        back = frame_from_subspace(space, L, fr.J)
        if back != fr:
            fails.append(f"frame round trip failed for {fr}")
        if not proj_equal(pure_spinor_from_frame(space, frame_from_spinor(space, s)), s, F):
            fails.append(f"spinor round trip failed for {fr}")
    return n, fails


def check_heisenberg(ctx: SuiteContext):
    E, roots, spaceE, th = ctx.split
    g = ctx.g
    n = 2 * g + 1
    full = frozenset(range(1, n + 1))
    N = 2**g
    fails = []
    cases = 0
    one = linalg.identity(N, E)
    MB = heisenberg_matrix(spaceE, roots, full, th)
    cases += 1
    if MB.matrix != one:
        fails.append("M_B is not the identity")
    inf = infinity(g, E)
    for r in range(0, n + 1):
        for I in combinations(range(1, n + 1), r):
            I = frozenset(I)
            H = heisenberg_matrix(spaceE, roots, I, th)
            Hc = heisenberg_matrix(spaceE, roots, full - I, th)
            cases += 1
            sq = linalg.matmul(H.matrix, H.matrix, E)
            if sq != [[H.r if i == j else E.zero for j in range(N)] for i in range(N)]:
                fails.append(f"M_I^2 != r for I={sorted(I)}")
            if H.matrix != Hc.matrix:
                fails.append(f"M_I != M_Ic for I={sorted(I)}")
            if r <= g:
                col = [row[N - 1] for row in H.matrix]
                b = beta_form(col, inf, E)
                want = E.one if r == g else E.zero
                if b != want:
                    fails.append(f"beta(M_I inf, inf) = {b} for |I| = {r}")
    return cases, fails


def check_duplication(ctx: SuiteContext):
    F, space = ctx.F, ctx.space
    dp = duplication_polys(ctx.curve)
    fails = []
    inf = infinity(ctx.g, F)
    if dp(inf) != inf:
        fails.append("delta(inf) != inf")
    for P in ctx.points:
        x = psi_embed(space, P)
        if not proj_equal(dp(x), psi_embed(space, cantor_double(P)), F):
            fails.append(f"delta mismatch at {P}")
    return len(ctx.points) + 1, fails


def _point_of_degree(ctx: SuiteContext, m: int, rng) -> MumfordDivisor:
    C, F = ctx.curve, ctx.F
    while True:
        D = identity(C)
        for _ in range(m):
            a = F.random(rng)
            y2 = C.f(a)
            if not F.is_square(y2):
                break
            D = cantor_add(D, affine_point(C, a, F.sqrt(y2)))
        if D.m == m:
            return D


def check_resultant(ctx: SuiteContext):
    rng = ctx.rng_for("resultant")
    E, roots, spaceE, th = ctx.split
    g = ctx.g
    CE = spaceE.curve
    fails = []
    n = max(ctx.n_points, 30)
    for _ in range(n):
        m = rng.randint(0, g)
        T = frozenset(rng.sample(range(1, 2 * g + 2), g - m))
        P = _point_of_degree(ctx, m, rng)
        PE = validate_mumford(CE, P.U.change_field(E), P.V.change_field(E), P.R.change_field(E), E)
        lhs = coordinate_resultant(spaceE, roots, T, PE, th)
        # Res(U_P, U_T) two ways: Euclidean resultant and the root product
        res = PE.U.resultant(Poly.from_roots([roots[i - 1] for i in sorted(T)], E))
        prod = E.one
        for i in T:
            prod = prod * PE.U(roots[i - 1])
        if m * (g - m) % 2:
            prod = -prod
        if not lhs == res == prod:
            fails.append(f"T={sorted(T)} P={P}: {lhs}, {res}, {prod}")
    return n, fails


def check_quadrics(ctx: SuiteContext):
    g, F, space = ctx.g, ctx.F, ctx.space
    N = 2**g
    Q = quadric_ideal(space, seed=ctx.seed)
    want = comb(N + 1, 2) - comb(2 * g + 1, g)
    fails = []
    if len(Q) != want:
        fails.append(f"quadric ideal dimension {len(Q)} != {want}")
    for P in ctx.points:
        s = psi_embed(space, P)
        for q in Q:
            if eval_quadric(q, s, F):
                fails.append(f"quadric does not vanish at Psi({P})")
                break
    return len(ctx.points) + 1, fails


def check_qforms(ctx: SuiteContext):
    E, roots, spaceE, th = ctx.split
    g = ctx.g
    N = 2**g
    monos = quadric_monomials(N)
    rows = []
    fails = []
    for T in combinations(range(1, 2 * g + 2), g):
        Q = q_form(spaceE, roots, T, th)
        for a in range(N):
            for b in range(N):
                if Q[a][b] != Q[b][a]:
                    fails.append(f"q_T not symmetric for T={T}")
                    break
        rows.append([Q[a][a] if a == b else Q[a][b] + Q[b][a] for a, b in monos])
    r = linalg.rank(rows, E)
    want = comb(2 * g + 1, g)
    if r != want:
        fails.append(f"q-form span rank {r} != {want}")
    # the span meets the quadric ideal only in 0
    I = quadric_ideal(spaceE, seed=ctx.seed)
    if I and linalg.rank(rows + I, E) != r + len(I):
        fails.append("q-form span meets the quadric ideal")
    return len(rows), fails


CHECKS: dict[str, Callable] = {
    "a_negation": check_negation,
    "b_membership": check_membership,
    "c_incidence": check_incidence,
    "d_round_trip": check_round_trip,
    "e_heisenberg": check_heisenberg,
    "f_duplication": check_duplication,
    "g_resultant": check_resultant,
    "h_quadrics": check_quadrics,
    "i_qforms": check_qforms,
}


def _run_one(name: str, ctx: SuiteContext) -> CheckResult:
    t = time.perf_counter()
    try:
        cases, fails = CHECKS[name](ctx)
    except Exception as exc:  # a crash is reported as a failure of that check
        cases, fails = 0, [f"{type(exc).__name__}: {exc}"]
    return CheckResult(name, ctx.g, ctx.p, cases, fails, time.perf_counter() - t)


def run_suite(genera=(1, 2, 3), primes=(5, 7, 11, 13), n_points: int = 100, seed: int = 0,
              checks=None, threads: int | None = None) -> list[CheckResult]:
    """Run the named checks on every (g, p); results sorted by (name, g, p)."""
    names = list(checks) if checks else list(CHECKS)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if threads is None:
        threads = int(os.environ.get("SPINOR_KUMMER_THREADS", "1") or 1)
    contexts = [SuiteContext(g, p, seed, n_points) for g in genera for p in primes]
    for c in contexts:
        c.split  # build shared data before fanning out
    jobs = [(n, c) for c in contexts for n in names]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda j: _run_one(*j), jobs))
    else:
        results = [_run_one(*j) for j in jobs]
    results.sort(key=lambda r: (r.name, r.g, r.p))
    return results


def format_report(results: list[CheckResult], timings: bool = False) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.name} g={r.g} p={r.p} cases={r.cases}"
        if timings:
            line += f" ({r.seconds:.2f}s)"
        lines.append(line)
        for f in r.failures[:5]:
            lines.append(f"    {f}")
    return "\n".join(lines)
