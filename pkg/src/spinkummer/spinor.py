"""The spin representation S = ∧E of the Clifford algebra of V.

E = <p_{g+1}, ..., p_{2g}>.  A spin vector is a list of 2^g field elements
indexed by subsets I of {g+1, ..., 2g} in canonical order: larger subsets
first, and within a size the subsets written in increasing order and
compared lexicographically, larger first.  Coordinate I is the coefficient of p_I = p_{i_r} ∧ ... ∧ p_{i_1}
with i_r > ... > i_1.
"""

from __future__ import annotations

import random as _random
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import linalg
from .quadratic_space import QuadraticSpace

__all__ = [
    "SpinorError",
    "IsotropicFrame",
    "spin_subset_order",
    "spin_index",
    "clifford_act",
    "clifford_basis",
    "beta_form",
    "pfaffian",
    "pure_spinor_from_frame",
    "frame_to_subspace",
    "frame_from_subspace",
    "frame_from_spinor",
    "annihilator",
    "is_pure",
    "quadric_ideal",
    "infinity",
    "normalize",
    "proj_equal",
]


class SpinorError(ArithmeticError):
    """Raised when a spinor computation hits an impossible configuration."""


# ---------------------------------------------------------------------------
# Index bookkeeping
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def spin_subset_order(g: int) -> tuple[tuple[int, ...], ...]:
    """Subsets of {g+1..2g} as descending tuples, in canonical order."""
    if g < 1:
        raise ValueError("genus must be positive")
    elems = list(range(2 * g, g, -1))
    out = []
    for r in range(g, -1, -1):
        # reverse lexicographic: compare the sets listed in increasing
        # order, larger first
        block = sorted(combinations(sorted(elems), r), reverse=True)
        out.extend(tuple(reversed(c)) for c in block)
    return tuple(out)


@lru_cache(maxsize=None)
def _index_map(g: int) -> dict:
    return {frozenset(I): n for n, I in enumerate(spin_subset_order(g))}


def spin_index(g: int, I) -> int:
    """Position of the subset I in the canonical order."""
    return _index_map(g)[frozenset(I)]


@lru_cache(maxsize=None)
def _basis_action(g: int, k: int) -> tuple:
    """Action of p_k on basis monomials: entry n is (target, coefficient) or None."""
    order = spin_subset_order(g)
    idx = _index_map(g)
    out = []
    for I in order:
        S = set(I)
        if k > g:
            if k in S:
                out.append(None)
                continue
            sign = -1 if sum(1 for i in S if i > k) % 2 else 1
            out.append((idx[frozenset(S | {k})], sign))
        elif k < g:
            m = 2 * g - k
            if m not in S:
                out.append(None)
                continue
            sign = -1 if sum(1 for i in S if i > m) % 2 else 1
            out.append((idx[frozenset(S - {m})], 2 * sign))
        else:
            out.append((idx[frozenset(S)], -1 if len(S) % 2 else 1))
    return tuple(out)


def clifford_basis(g: int, k: int, s: Sequence, field) -> list:
    """p_k · s."""
    out = [field.zero] * len(s)
    for src, entry in enumerate(_basis_action(g, k)):
        if entry is not None and s[src]:
            dst, c = entry
            out[dst] = out[dst] + s[src] * c
    return out


def clifford_act(space: QuadraticSpace, v: Sequence, s: Sequence) -> list:
    """v · s for v in straightened coordinates."""
    F = space.field
    g = space.g
    out = [F.zero] * len(s)
    for k, a in enumerate(v):
        if a:
            t = clifford_basis(g, k, s, F)
            out = [o + a * b for o, b in zip(out, t)]
    return out


def infinity(g: int, field) -> list:
    """The spin vector (0, ..., 0, 1) = p_∅."""
    v = [field.zero] * (2**g)
    v[-1] = field.one
    return v


def basis_vector(g: int, I, field) -> list:
    v = [field.zero] * (2**g)
    v[spin_index(g, I)] = field.one
    return v


# ---------------------------------------------------------------------------
# The covariant form
# ---------------------------------------------------------------------------


def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] < seq[j]:
                sign = -sign
    # sign of the permutation taking seq to descending order
    return sign


@lru_cache(maxsize=None)
def _beta_table(g: int) -> tuple:
    """Entries (partner index, sign) with beta(p_I, p_{I^c}) = sign."""
    order = spin_subset_order(g)
    full = frozenset(range(g + 1, 2 * g + 1))
    idx = _index_map(g)
    out = []
    for I in order:
        Jc = full - frozenset(I)
        J = tuple(sorted(Jc, reverse=True))
        # (p_J)^* = (-1)^{|J|} times the reversed wedge, and reversing a
        # wedge of length s costs (-1)^{s(s-1)/2}.
        s = len(J)
        sign = (-1) ** s * (-1) ** (s * (s - 1) // 2)
        # p_I ∧ p_J is the concatenation of two descending runs
        sign *= _perm_sign(list(I) + list(J))
        out.append((idx[Jc], sign))
    return tuple(out)


def beta_form(s1: Sequence, s2: Sequence, field):
    """beta(s1, s2): coefficient of p_{2g} ∧ ... ∧ p_{g+1} in s1 ∧ s2^*."""
    g = len(s1).bit_length() - 1
    acc = field.zero
    for n, (m, sign) in enumerate(_beta_table(g)):
        a, b = s1[n], s2[m]
        if a and b:
            acc = acc + a * b if sign > 0 else acc - a * b
    return acc


# ---------------------------------------------------------------------------
# Frames and Pfaffians
# ---------------------------------------------------------------------------


class IsotropicFrame:
    """Data (J, xi_i, xi_ij) describing a maximal isotropic subspace of V.

    ``J`` is a subset of {g+1, ..., 2g}; ``xi`` has length g and ``xi2`` is
    an antisymmetric g x g matrix.
    """

    __slots__ = ("g", "J", "xi", "xi2")

    def __init__(self, g: int, J, xi: Sequence, xi2: Sequence[Sequence], check: bool = True):
        self.g = g
        self.J = frozenset(J)
        if not self.J <= set(range(g + 1, 2 * g + 1)):
            raise ValueError("J must be a subset of {g+1, ..., 2g}")
        self.xi = list(xi)
        self.xi2 = [list(r) for r in xi2]
        if check:
            for i in range(g):
                for j in range(g):
                    if self.xi2[i][j] + self.xi2[j][i]:
                        raise SpinorError("frame matrix is not antisymmetric")

    @classmethod
    def zero(cls, g: int, field, J=None) -> "IsotropicFrame":
        if J is None:
            J = range(g + 1, 2 * g + 1)
        return cls(g, J, [field.zero] * g, [[field.zero] * g for _ in range(g)])

    @classmethod
    def random(cls, g: int, field, rng: _random.Random, J=None) -> "IsotropicFrame":
        if J is None:
            J = range(g + 1, 2 * g + 1)
        xi = [field.random(rng) for _ in range(g)]
        M = [[field.zero] * g for _ in range(g)]
        for i in range(g):
            for j in range(i + 1, g):
                a = field.random(rng)
                M[i][j] = a
                M[j][i] = -a
        return cls(g, J, xi, M)

    def __eq__(self, other):
        return (
            isinstance(other, IsotropicFrame)
            and self.J == other.J
            and self.xi == other.xi
            and self.xi2 == other.xi2
        )

    def __repr__(self):
        return f"IsotropicFrame(J={sorted(self.J, reverse=True)}, xi={self.xi}, xi2={self.xi2})"


def pfaffian(frame: IsotropicFrame, I: Sequence[int], field):
    """The Pfaffian xi_I of the pair (xi_i, xi_ij) for I ⊆ {0..g-1}."""
    I = tuple(sorted(I))
    return _pfaff(I, frame.xi, frame.xi2, field)


def _pfaff(I: tuple, xi, M, field):
    if not I:
        return field.one
    if len(I) % 2:
        acc = field.zero
        for t, i0 in enumerate(I):
            if xi[i0]:
                term = xi[i0] * _pfaff(I[:t] + I[t + 1 :], xi, M, field)
                acc = acc - term if t % 2 else acc + term
        return acc
    i1 = I[0]
    acc = field.zero
    for t in range(1, len(I)):
        j = I[t]
        if M[i1][j]:
            term = M[i1][j] * _pfaff(I[1:t] + I[t + 1 :], xi, M, field)
            acc = acc + term if t % 2 else acc - term
    return acc


def _prime_index(g: int, J: frozenset, k: int) -> int:
    """Index of the basis vector p'_k."""
    if k < g:
        return k if (2 * g - k) in J else 2 * g - k
    if k > g:
        return k if k in J else 2 * g - k
    return g


def frame_to_subspace(space: QuadraticSpace, frame: IsotropicFrame) -> list:
    """Basis l_{2g}, ..., l_{g+1} of the subspace, rows in straightened coordinates."""
    F = space.field
    g = space.g
    half = F.one / 2
    rows = []
    for j in range(2 * g, g, -1):
        r = 2 * g - j
        v = [F.zero] * space.n
        v[_prime_index(g, frame.J, j)] = F.one
        v[g] = frame.xi[r]
        for i in range(g):
            A = frame.xi2[i][r] - half * frame.xi[i] * frame.xi[r]
            v[_prime_index(g, frame.J, i)] = A
        rows.append(v)
    return rows


def frame_from_subspace(space: QuadraticSpace, L: Sequence[Sequence], J) -> IsotropicFrame:
    """Frame data of a maximal isotropic subspace relative to J.

    Raises SpinorError if the subspace meets L_{J^c} (pivot block singular).
    """
    F = space.field
    g = space.g
    J = frozenset(J)
    if len(L) != g:
        raise SpinorError("subspace must have dimension g")
    pivots = [_prime_index(g, J, j) for j in range(2 * g, g, -1)]
    block = [[row[c] for c in pivots] for row in L]
    try:
        comb = linalg.inverse(block, F)
    except linalg.LinAlgError as exc:
        raise SpinorError("subspace is not transverse to the chart of J") from exc
    ls = linalg.matmul(comb, [list(r) for r in L], F)
    half = F.one / 2
    xi = [F.zero] * g
    A = [[F.zero] * g for _ in range(g)]
    for t, j in enumerate(range(2 * g, g, -1)):
        r = 2 * g - j
        xi[r] = ls[t][g]
        for i in range(g):
            A[i][r] = ls[t][_prime_index(g, J, i)]
    xi2 = [[A[i][j] + half * xi[i] * xi[j] for j in range(g)] for i in range(g)]
    for i in range(g):
        for j in range(g):
            if xi2[i][j] + xi2[j][i]:
                raise SpinorError("subspace is not isotropic")
    return IsotropicFrame(g, J, xi, xi2, check=False)


def pure_spinor_from_frame(space: QuadraticSpace, frame: IsotropicFrame) -> list:
    """omega_L = gamma · p_J with gamma the product of Clifford-group factors."""
    F = space.field
    g = space.g
    half = F.one / 2
    J = frame.J
    s = basis_vector(g, J, F)
    for i in range(g):
        pi = _prime_index(g, J, i)
        for j in range(i + 1, g):
            c = frame.xi2[i][j]
            if c:
                t = clifford_basis(g, pi, clifford_basis(g, _prime_index(g, J, j), s, F), F)
                hc = half * c
                s = [a + hc * b for a, b in zip(s, t)]
    acc = [F.zero] * len(s)
    for j in range(g):
        c = frame.xi[j]
        if c:
            t = clifford_basis(g, _prime_index(g, J, j), s, F)
            acc = [a + c * b for a, b in zip(acc, t)]
    t = clifford_basis(g, g, acc, F)
    return [a + half * b for a, b in zip(s, t)]


def annihilator(space: QuadraticSpace, s: Sequence) -> list:
    """Basis (rows, straightened coordinates) of {v in V : v·s = 0}."""
    F = space.field
    g = space.g
    if not any(s):
        raise SpinorError("the zero spin vector has no annihilator")
    cols = [clifford_basis(g, k, s, F) for k in range(space.n)]
    M = linalg.transpose(cols)  # rows: spin coordinates, columns: basis of V
    return linalg.kernel(M, F)


def is_pure(space: QuadraticSpace, s: Sequence) -> bool:
    return len(annihilator(space, s)) == space.g


def frame_from_spinor(space: QuadraticSpace, s: Sequence) -> IsotropicFrame:
    """Recover a frame from a pure spinor, charted at its first nonzero coordinate."""
    L = annihilator(space, s)
    if len(L) != space.g:
        raise SpinorError("spin vector is not pure")
    order = spin_subset_order(space.g)
    n = next(i for i, a in enumerate(s) if a)
    return frame_from_subspace(space, L, order[n])


# ---------------------------------------------------------------------------
# Projective helpers
# ---------------------------------------------------------------------------


def normalize(s: Sequence, field) -> list:
    """Scale so that the first nonzero coordinate is 1."""
    n = next((i for i, a in enumerate(s) if a), None)
    if n is None:
        raise SpinorError("cannot normalise the zero vector")
    inv = field.one / s[n]
    return [a * inv for a in s]


def proj_equal(a: Sequence, b: Sequence, field) -> bool:
    if not any(a) or not any(b):
        return False
    return normalize(a, field) == normalize(b, field)


# ---------------------------------------------------------------------------
# Quadrics through the orthogonal Grassmannian
# ---------------------------------------------------------------------------


def quadric_monomials(N: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(N) for b in range(a, N)]


def quadric_ideal(space: QuadraticSpace, seed: int = 0, max_rounds: int = 8) -> list:
    """Basis of the degree-2 part of the ideal of the spinor variety.

    Each quadric is a coefficient list over ``quadric_monomials(2^g)``.  The
    ideal is found as the kernel of evaluation at random pure spinors; the
    sample is enlarged until the rank stops growing.
    """
    F = space.field
    g = space.g
    N = 2**g
    monos = quadric_monomials(N)
    rng = _random.Random(seed)
    rows: list = []
    last_rank = -1
    for _ in range(max_rounds):
        for _ in range(len(monos) // 2 + 8):
            s = pure_spinor_from_frame(space, IsotropicFrame.random(g, F, rng))
            rows.append([s[a] * s[b] for a, b in monos])
        r = linalg.rank(rows, F)
        if r == last_rank:
            return linalg.kernel(rows, F)
        last_rank = r
        rows = linalg.row_space(rows, F)
    raise SpinorError("evaluation rank did not stabilise; use a larger field")


def eval_quadric(q: Sequence, s: Sequence, field):
    acc = field.zero
    for c, (a, b) in zip(q, quadric_monomials(len(s))):
        if c:
            acc = acc + c * s[a] * s[b]
    return acc


def generic_chart_frame(g: int, s: Sequence, field) -> IsotropicFrame:
    """Frame with J = {g+1..2g} read off a spin vector whose first coordinate is 1.

    Inverts the generic closed formula on the singleton and pair
    coordinates: the coefficient of p_{Î^c} is
    (-1)^{sum I + |I|(g+1)} 2^{floor(|I|/2)} xi_I.
    """
    if s[0] != 1:
        raise SpinorError("first coordinate must be 1 in the generic chart")
    full = frozenset(range(g + 1, 2 * g + 1))
    half = field.one / 2
    xi = []
    for i in range(g):
        c = s[spin_index(g, full - {2 * g - i})]
        xi.append(c if (i + g + 1) % 2 == 0 else -c)
    M = [[field.zero] * g for _ in range(g)]
    for i in range(g):
        for j in range(i + 1, g):
            c = s[spin_index(g, full - {2 * g - i, 2 * g - j})] * half
            c = c if (i + j) % 2 == 0 else -c
            M[i][j] = c
            M[j][i] = -c
    return IsotropicFrame(g, full, xi, M, check=False)
