"""Heisenberg matrices, generic spin bases and duplication quartics.

Over a field containing the roots w_1 < ... < w_{2g+1} of f, the vectors
eps_i = f / (x - w_i) of V are pairwise orthogonal with psi(eps_i, eps_i) =
f'(w_i).  For I = {i_1 < ... < i_r} the matrix M_I of
delta_I^{-1} eps_{i_1} ... eps_{i_r} acting on S lifts the 2-torsion point
[D_I].  Duplication quartics delta are the unique solution of

    beta(M_T inf, delta(x)) * beta(M_T inf, inf) = beta(M_T x, x)^2

as T runs over a generic spin basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import linalg
from .fields import ExtensionField, FieldError, PrimeField, RationalField, extension_of
from .fqarray import FqArrays
from .jacobian import MumfordDivisor
from .kummer import psi_embed
from .polynomials import Poly, rational_roots, splitting_data
from .quadratic_space import HyperellipticCurve, QuadraticSpace
from .spinor import _basis_action, _beta_table, spin_index

__all__ = [
    "ThetaError",
    "epsilon_vector",
    "HeisenbergMatrix",
    "heisenberg_matrix",
    "generic_spin_basis",
    "uniform_matroid_family",
    "q_form",
    "coordinate_resultant",
    "DuplicationPolys",
    "duplication_polys",
    "quartic_monomials",
    "split_model",
]


class ThetaError(ArithmeticError):
    """Raised when a theta-group construction is unavailable."""


# ---------------------------------------------------------------------------
# Integer matrices of the basis action and of beta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _action_mats(g: int) -> np.ndarray:
    """mats[k][dst][src]: integer matrix of p_k acting on S."""
    N = 2**g
    mats = np.zeros((2 * g + 1, N, N), dtype=np.int64)
    for k in range(2 * g + 1):
        for src, entry in enumerate(_basis_action(g, k)):
            if entry is not None:
                dst, c = entry
                mats[k, dst, src] = c
    return mats


@lru_cache(maxsize=None)
def _beta_mat(g: int) -> np.ndarray:
    """B with beta(u, v) = u^t B v."""
    N = 2**g
    B = np.zeros((N, N), dtype=np.int64)
    for n, (m, sign) in enumerate(_beta_table(g)):
        B[n, m] = sign
    return B


class _PyOps:
    """The FqArrays interface on nested lists of exact field elements."""

    def __init__(self, field):
        self.field = field

    def encode(self, nested):
        return nested

    def decode(self, nested):
        return nested

    def matmul(self, A, B):
        return linalg.matmul(A, B, self.field)

    def int_combination(self, coeffs, mats):
        F = self.field
        K, n, m = mats.shape
        out = [[F.zero] * m for _ in range(n)]
        for k in range(K):
            c = coeffs[k]
            if not c:
                continue
            nz = np.argwhere(mats[k])
            for a, b in nz:
                out[a][b] = out[a][b] + c * int(mats[k, a, b])
        return out

    def int_right(self, A, M):
        F = self.field
        n, m = len(A), M.shape[1]
        out = [[F.zero] * m for _ in range(n)]
        nz = np.argwhere(M)
        for i in range(n):
            for k, j in nz:
                if A[i][k]:
                    out[i][j] = out[i][j] + A[i][k] * int(M[k, j])
        return out

    def scale(self, s, A):
        return [[s * a for a in row] for row in A]


def _ops_for(field):
    if isinstance(field, (PrimeField, ExtensionField)):
        return FqArrays(field)
    return _PyOps(field)


def _transpose(ops, A):
    if isinstance(A, np.ndarray):
        return np.swapaxes(A, 0, 1)
    return linalg.transpose(A)


def _column(A, j):
    if isinstance(A, np.ndarray):
        return A[:, j]
    return [row[j] for row in A]


# ---------------------------------------------------------------------------
# Root vectors and Heisenberg matrices
# ---------------------------------------------------------------------------


def epsilon_vector(space: QuadraticSpace, roots: Sequence, i: int) -> list:
    """eps_i = f / (x - w_i) in straightened coordinates (i is 1-based)."""
    F = space.field
    w = F(roots[i - 1])
    q, r = space.curve.f.divmod(Poly([-w, F.one], F))
    if r:
        raise ThetaError(f"w_{i} is not a root of f")
    return space.to_P(q.coeffs(space.n))


def _delta(roots: Sequence, I: Sequence[int], F):
    I = sorted(I)
    out = F.one
    for a in range(len(I)):
        for b in range(a + 1, len(I)):
            out = out * (F(roots[I[b] - 1]) - F(roots[I[a] - 1]))
    return out


def resultant_r(roots: Sequence, I, J, F):
    """r_{I,J} = prod_{i in I, j in J} (w_i - w_j)."""
    out = F.one
    for i in I:
        for j in J:
            out = out * (F(roots[i - 1]) - F(roots[j - 1]))
    return out


class ThetaContext:
    """Cached root vectors and their Clifford matrices for one split curve."""

    def __init__(self, space: QuadraticSpace, roots: Sequence, ops=None):
        self.space = space
        self.field = space.field
        self.g = space.g
        self.roots = [self.field(w) for w in roots]
        if len(self.roots) != space.n:
            raise ThetaError("need all 2g+1 roots of f")
        self.ops = ops if ops is not None else _ops_for(self.field)
        mats = _action_mats(self.g)
        self.eps = [epsilon_vector(space, self.roots, i) for i in range(1, space.n + 1)]
        enc = self.ops.encode
        self.eps_mats = [self.ops.int_combination(enc(e), mats) for e in self.eps]
        self._cache: dict = {}

    def canonical(self, I) -> frozenset:
        """The smaller of I and its complement (same torsion class and matrix)."""
        I = frozenset(I)
        if len(I) > self.g:
            return frozenset(range(1, self.space.n + 1)) - I
        return I

    def matrix(self, I, canonical: bool = True):
        """M_I in the backend representation."""
        I = self.canonical(I) if canonical else frozenset(I)
        if I in self._cache:
            return self._cache[I]
        F = self.field
        N = 2**self.g
        idx = sorted(I)
        if not idx:
            M = self.ops.encode(linalg.identity(N, F))
        else:
            M = self.eps_mats[idx[0] - 1]
            for i in idx[1:]:
                M = self.ops.matmul(M, self.eps_mats[i - 1])
            M = self.ops.scale(F.one / _delta(self.roots, idx, F), M)
        self._cache[I] = M
        return M


@dataclass
class HeisenbergMatrix:
    I: frozenset
    matrix: list
    r: object


def heisenberg_matrix(space: QuadraticSpace, roots: Sequence, I, ctx: ThetaContext | None = None,
                      canonical: bool = False) -> HeisenbergMatrix:
    """M_I together with r_{I, I^c}.

    With ``canonical=False`` the product over I itself is formed, so that
    identities such as M_{I^c} = M_I can be tested rather than assumed.
    """
    ctx = ctx or ThetaContext(space, roots)
    I = frozenset(I)
    M = ctx.ops.decode(ctx.matrix(I, canonical=canonical))
    Ic = frozenset(range(1, space.n + 1)) - I
    return HeisenbergMatrix(I, M, resultant_r(ctx.roots, I, Ic, ctx.field))


# ---------------------------------------------------------------------------
# Generic spin bases
# ---------------------------------------------------------------------------


def uniform_matroid_family(J1: Sequence[int], J2: Sequence[int], n: int, r: int) -> list[frozenset]:
    """Subsets of size r whose wedges form a basis of ∧^r W for any uniform W.

    Follows the inductive construction: peel off the least element of J1
    (r even) or J2 (r odd) and recurse.
    """
    J1, J2 = sorted(J1), sorted(J2)
    if n == 1:
        return [frozenset([J2[0]])]
    if r == 1:
        return [frozenset([j]) for j in J2[:n]]
    if r % 2 == 0:
        j = J1[0]
        J1p, J2p = J1[1:], J2
    else:
        j = J2[0]
        J1p, J2p = J1, J2[1:]
    F1 = [I | {j} for I in uniform_matroid_family(J1p, J2p, n - 1, r - 1)]
    if r == n:
        return F1
    return F1 + uniform_matroid_family(J1p, J2p, n - 1, r)


@lru_cache(maxsize=None)
def generic_spin_basis(g: int) -> tuple[frozenset, ...]:
    """2^g subsets T of {1..2g+1}, each of Mumford degree g, as I Δ {1..g}."""
    J1 = list(range(1, g + 1))
    J2 = list(range(g + 1, 2 * g + 2))
    fam = [frozenset()]
    for r in range(1, g + 1):
        fam.extend(uniform_matroid_family(J1, J2, g, r))
    return tuple(frozenset(I) ^ frozenset(J1) for I in fam)


# ---------------------------------------------------------------------------
# Quadratic forms attached to torsion points
# ---------------------------------------------------------------------------


def q_form(space: QuadraticSpace, roots: Sequence, T, ctx: ThetaContext | None = None) -> list:
    """Matrix Q with beta(M_T x, y) = x^t Q y (so q_T(x) = x^t Q x)."""
    ctx = ctx or ThetaContext(space, roots)
    M = ctx.matrix(T)
    Q = ctx.ops.int_right(_transpose(ctx.ops, M), _beta_mat(space.g))
    return ctx.ops.decode(Q)


def coordinate_resultant(space: QuadraticSpace, roots: Sequence, T, P: MumfordDivisor,
                         ctx: ThetaContext | None = None):
    """x_1(M_T Q) / x_M(Q) for Q = Psi(P), M = {2g, ..., 2g-m+1}."""
    ctx = ctx or ThetaContext(space, roots)
    F = space.field
    g = space.g
    s = psi_embed(space, P)
    M_idx = spin_index(g, range(2 * g, 2 * g - P.m, -1))
    xm = s[M_idx]
    if not xm:  # pragma: no cover - excluded by the Mumford chart
        raise AssertionError("x_M vanishes on a point of Mumford degree m")
    M = ctx.ops.decode(ctx.matrix(T))
    first = F.zero
    for b, a in zip(M[0], s):
        if a and b:
            first = first + a * b
    return first / xm


# ---------------------------------------------------------------------------
# Duplication quartics
# ---------------------------------------------------------------------------


def _grevlex_key(mono: tuple, N: int) -> tuple:
    e = [0] * N
    for v in mono:
        e[v] += 1
    return tuple(-e[i] for i in range(N - 1, -1, -1))


@lru_cache(maxsize=None)
def quartic_monomials(N: int) -> tuple[tuple[int, ...], ...]:
    """Degree-4 monomials in N variables (0-based index tuples), grevlex descending."""
    monos = list(combinations_with_replacement(range(N), 4))
    monos.sort(key=lambda m: _grevlex_key(m, N), reverse=True)
    return tuple(monos)


@lru_cache(maxsize=None)
def _square_tables(N: int):
    pairs = list(combinations_with_replacement(range(N), 2))
    qidx = {m: n for n, m in enumerate(quartic_monomials(N))}
    P = len(pairs)
    tgt = np.empty((P, P), dtype=np.int64)
    for u, (a, b) in enumerate(pairs):
        for v, (c, d) in enumerate(pairs):
            tgt[u, v] = qidx[tuple(sorted((a, b, c, d)))]
    return pairs, tgt


def _pair_coeffs(Q, N, ops):
    """Coefficients of x^t Q x on the monomials x_a x_b (a <= b)."""
    pairs, _ = _square_tables(N)
    if isinstance(Q, np.ndarray):
        a = np.array([p[0] for p in pairs])
        b = np.array([p[1] for p in pairs])
        out = (Q[a, b] + Q[b, a]) % ops.p
        diag = a == b
        out[diag] = Q[a[diag], a[diag]]
        return out
    out = []
    for a, b in pairs:
        out.append(Q[a][a] if a == b else Q[a][b] + Q[b][a])
    return out


@dataclass
class DuplicationPolys:
    """2^g quartic forms; ``coeffs[k][n]`` multiplies ``monomials[n]``."""

    g: int
    field: object
    monomials: tuple
    coeffs: list
    provenance: dict = dc_field(default_factory=dict)

    @property
    def N(self) -> int:
        return 2**self.g

    def __post_init__(self):
        self._int = None
        if isinstance(self.field, PrimeField):
            self._int = np.array([[int(c) for c in row] for row in self.coeffs], dtype=np.int64)
            self._mono = np.array(self.monomials, dtype=np.int64)

    def __call__(self, x: Sequence) -> list:
        F = self.field
        if self._int is not None:
            p = F.p
            xv = np.array([int(F(a)) for a in x], dtype=np.int64)
            m = self._mono
            vals = xv[m[:, 0]] * xv[m[:, 1]] % p * xv[m[:, 2]] % p * xv[m[:, 3]] % p
            return [F(int(v)) for v in (self._int @ vals) % p]
        vals = []
        for a, b, c, d in self.monomials:
            vals.append(x[a] * x[b] * x[c] * x[d])
        out = []
        for row in self.coeffs:
            acc = F.zero
            for coef, v in zip(row, vals):
                if coef and v:
                    acc = acc + coef * v
            out.append(acc)
        return out

    def terms(self, k: int) -> list[tuple[tuple[int, ...], object]]:
        """Nonzero terms of delta_{k+1} as (exponent vector, coefficient), grevlex order."""
        out = []
        for mono, c in zip(self.monomials, self.coeffs[k]):
            if c:
                e = [0] * self.N
                for v in mono:
                    e[v] += 1
                out.append((tuple(e), c))
        return out


def split_model(curve: HyperellipticCurve, seed: int = 0):
    """(working field, sorted roots, degree d) for a curve over Q or F_p."""
    F = curve.field
    if isinstance(F, RationalField):
        roots = rational_roots(curve.f)
        if len(roots) != curve.f.degree():
            raise ThetaError("f does not split over Q; duplication needs a split model")
        return F, roots, 1
    if isinstance(F, PrimeField):
        d, roots = splitting_data(curve.f, seed)
        E = F if d == 1 else extension_of(F, d)
        return E, roots, d
    raise FieldError("unsupported base field")


def duplication_polys(curve: HyperellipticCurve, basis: Sequence | None = None,
                      seed: int = 0, python_backend: bool = False) -> DuplicationPolys:
    """Duplication quartics over the base field of the curve.

    Over F_p the roots live in F_{p^d}; the quartics are solved there and
    descended by (1/d) * trace, which needs p not dividing d.
    """
    F0 = curve.field
    g = curve.g
    N = 2**g
    E, roots, d = split_model(curve, seed)
    if isinstance(F0, PrimeField) and d % F0.p == 0:
        raise ThetaError(
            f"trace descent unavailable: p = {F0.p} divides the splitting degree {d}; "
            "choose another curve or prime"
        )
    space = QuadraticSpace(curve if E == F0 else curve.base_change(E))
    ops = _PyOps(E) if python_backend else _ops_for(E)
    ctx = ThetaContext(space, roots, ops)
    basis = list(basis) if basis is not None else list(generic_spin_basis(g))
    if len(basis) != N:
        raise ThetaError("a generic spin basis has 2^g elements")
    B = _beta_mat(g)
    G, c, Qs = [], [], []
    for T in basis:
        M = ctx.matrix(T)
        b = ops.decode(_column(M, N - 1))
        row = [E.zero] * N
        for n, (m, sign) in enumerate(_beta_table(g)):
            if b[n]:
                row[m] = row[m] + b[n] * sign
        G.append(row)
        c.append(row[N - 1])
        Qs.append(ops.int_right(_transpose(ops, M), B))
    if any(not ci for ci in c):
        raise ThetaError("beta(M_T inf, inf) vanishes: T is not of Mumford degree g")
    try:
        Ginv = linalg.inverse(G, E)
    except linalg.LinAlgError as exc:  # pragma: no cover - generic spin basis is independent
        raise AssertionError("generic spin basis vectors are dependent") from exc
    W = [[Ginv[k][i] / c[i] for i in range(N)] for k in range(N)]
    monos = quartic_monomials(N)
    pairs, tgt = _square_tables(N)
    nm = len(monos)
    if isinstance(ops, FqArrays):
        dd = ops.d
        sq = np.zeros((N, nm, dd), dtype=np.int64)
        flat_tgt = tgt.reshape(-1)
        for i, Q in enumerate(Qs):
            pc = _pair_coeffs(Q, N, ops)
            outer = (pc[:, None, :, None] * pc[None, :, None, :]).reshape(-1, dd, dd)
            acc = np.zeros((nm, dd, dd), dtype=np.int64)
            np.add.at(acc, flat_tgt, outer)
            sq[i] = ops.reduce_outer(acc % ops.p)
        Warr = ops.encode(W)
        delta = ops.reduce_outer(np.einsum("kix,imy->kmxy", Warr, sq) % ops.p)
        if d > 1:
            tvec = E.trace_vector()
            inv_d = pow(d, -1, F0.p)
            ints = (ops.trace(delta, tvec) * inv_d) % F0.p
        else:
            ints = delta[..., 0]
        coeffs = [[F0(int(v)) for v in row] for row in ints]
    else:
        sqs = []
        for Q in Qs:
            pc = _pair_coeffs(Q, N, ops)
            acc = [E.zero] * nm
            for u in range(len(pairs)):
                if not pc[u]:
                    continue
                for v in range(len(pairs)):
                    if pc[v]:
                        t = tgt[u, v]
                        acc[t] = acc[t] + pc[u] * pc[v]
            sqs.append(acc)
        coeffs = []
        for k in range(N):
            row = [E.zero] * nm
            for i in range(N):
                w = W[k][i]
                if w:
                    row = [a + w * s for a, s in zip(row, sqs[i])]
            coeffs.append(row)
        if d > 1:
            inv_d = F0.one / d
            coeffs = [[E.trace(a) * inv_d for a in row] for row in coeffs]
        else:
            coeffs = [[F0(a) if not isinstance(a, type(F0.zero)) else a for a in row] for row in coeffs]
    prov = {
        "basis": [sorted(T) for T in basis],
        "splitting_degree": d,
        "descent": "trace/d" if d > 1 else "none",
        "root_order": "sorted by coefficient encoding" if d > 1 else "ascending",
    }
    if d > 1:
        prov["modulus"] = list(E.modulus)
    return DuplicationPolys(g, F0, monos, coeffs, prov)
