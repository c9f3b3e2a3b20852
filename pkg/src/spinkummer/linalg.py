"""Exact dense linear algebra over any of the library's fields.

Matrices are lists of row lists.  All routines are Gaussian elimination with
exact pivots (first nonzero entry), so ranks and echelon forms are
reproducible bit for bit.
"""

from __future__ import annotations

from typing import Sequence

__all__ = [
    "LinAlgError",
    "Matrix",
    "row_reduce",
    "rank",
    "kernel",
    "solve",
    "inverse",
    "det",
    "matmul",
    "matvec",
    "transpose",
    "identity",
    "zeros",
]


class LinAlgError(ArithmeticError):
    """Raised for singular systems and shape mismatches."""


Matrix = list


def zeros(rows: int, cols: int, field) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field) -> Matrix:
    M = zeros(n, n, field)
    for i in range(n):
        M[i][i] = field.one
    return M


def transpose(M: Matrix) -> Matrix:
    return [list(r) for r in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix, field) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise LinAlgError("shape mismatch in matmul")
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = field.zero
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A: Matrix, v: Sequence, field) -> list:
    out = []
    for row in A:
        acc = field.zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def row_reduce(M: Matrix, field) -> tuple[Matrix, Matrix, int, list[int]]:
    """Reduced row echelon form.

    Returns (E, T, rank, pivots) with T invertible and T*M = E.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    E = [list(r) for r in M]
    T = identity(rows, field)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if E[i][c]), None)
        if piv is None:
            continue
        E[r], E[piv] = E[piv], E[r]
        T[r], T[piv] = T[piv], T[r]
        inv = field.one / E[r][c]
        E[r] = [a * inv for a in E[r]]
        T[r] = [a * inv for a in T[r]]
        for i in range(rows):
            if i != r and E[i][c]:
                s = E[i][c]
                Er, Tr = E[r], T[r]
                E[i] = [a - s * b for a, b in zip(E[i], Er)]
                T[i] = [a - s * b for a, b in zip(T[i], Tr)]
        pivots.append(c)
        r += 1
    return E, T, r, pivots


def _echelon(M: Matrix, field) -> tuple[Matrix, list[int]]:
    """Row reduction without tracking the transform (cheaper)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    E = [list(r) for r in M]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if E[i][c]), None)
        if piv is None:
            continue
        E[r], E[piv] = E[piv], E[r]
        inv = field.one / E[r][c]
        E[r] = [a * inv for a in E[r]]
        Er = E[r]
        for i in range(rows):
            if i != r and E[i][c]:
                s = E[i][c]
                E[i] = [a - s * b for a, b in zip(E[i], Er)]
        pivots.append(c)
        r += 1
    return E[:r], pivots


def rank(M: Matrix, field) -> int:
    if not M:
        return 0
    return len(_echelon(M, field)[1])


def row_space(M: Matrix, field) -> Matrix:
    """Reduced echelon basis of the row space."""
    if not M:
        return []
    return _echelon(M, field)[0]


def kernel(M: Matrix, field, cols: int | None = None) -> Matrix:
    """Basis (as rows) of the right kernel {v : M v = 0}."""
    if not M:
        if cols is None:
            raise LinAlgError("cannot infer column count of an empty matrix")
        return identity(cols, field)
    n = len(M[0])
    E, pivots = _echelon(M, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * n
        v[fc] = field.one
        for row, pc in zip(E, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence, field) -> list:
    """Solve A x = b for square invertible A."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    E, pivots = _echelon(aug, field)
    if len(pivots) != n or (pivots and pivots[-1] == n):
        raise LinAlgError("singular system")
    return [E[i][n] for i in range(n)]


def inverse(A: Matrix, field) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n, field)[i] for i in range(n)]
    E, pivots = _echelon(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise LinAlgError("matrix is singular")
    return [row[n:] for row in E[:n]]


def det(A: Matrix, field):
    n = len(A)
    M = [list(r) for r in A]
    out = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out = out * M[c][c]
        inv = field.one / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                s = M[i][c] * inv
                M[i] = [a - s * b for a, b in zip(M[i], M[c])]
    return out


def intersection_dim(A: Matrix, B: Matrix, field) -> int:
    """Dimension of rowspace(A) ∩ rowspace(B)."""
    return rank(A, field) + rank(B, field) - rank(list(A) + list(B), field)
