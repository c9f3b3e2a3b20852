"""Vectorised arithmetic in F_p and F_{p^d} on numpy integer arrays.

An array of field elements has shape (..., d): the last axis holds the
coefficients in the field's power basis.  Products are computed as an outer
product of coefficient vectors followed by a fixed reduction matrix W, where
row i*d + j of W is the reduction of t^{i+j} modulo the defining polynomial.
"""

from __future__ import annotations

import numpy as np

from .fields import ExtensionField, FqElement, Fp, PrimeField

__all__ = ["FqArrays"]


class FqArrays:
    def __init__(self, field):
        if isinstance(field, PrimeField):
            self.p, self.d = field.p, 1
            mod = (0, 1)
        elif isinstance(field, ExtensionField):
            self.p, self.d = field.p, field.d
            mod = field.modulus
        else:
            raise TypeError("FqArrays needs a finite field")
        self.field = field
        p, d = self.p, self.d
        W = np.zeros((d * d, d), dtype=np.int64)
        # powers t^0 .. t^{2d-2} reduced modulo the defining polynomial
        powers = []
        cur = [1] + [0] * (d - 1)
        for _ in range(2 * d - 1):
            powers.append(list(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * mod[k]) % p for k, c in enumerate(cur)]
        for i in range(d):
            for j in range(d):
                W[i * d + j] = powers[i + j]
        self.W = W

    # -- conversion -------------------------------------------------------

    def _enc1(self, a) -> list:
        if isinstance(a, FqElement):
            return list(a.c)
        if isinstance(a, Fp):
            return [a.v] + [0] * (self.d - 1)
        return [int(a) % self.p] + [0] * (self.d - 1)

    def encode(self, nested) -> np.ndarray:
        """Nested lists of field elements -> integer array with trailing axis d."""

        def rec(x):
            if isinstance(x, (list, tuple)):
                return [rec(y) for y in x]
            return self._enc1(x)

        return np.array(rec(nested), dtype=np.int64)

    def decode(self, arr: np.ndarray):
        F = self.field
        if arr.ndim == 1:
            if self.d == 1:
                return F(int(arr[0]))
            return FqElement(tuple(int(v) for v in arr), F)
        return [self.decode(a) for a in arr]

    # -- arithmetic -------------------------------------------------------

    def reduce_outer(self, outer: np.ndarray) -> np.ndarray:
        """(..., d, d) outer products -> (..., d) reduced elements."""
        d = self.d
        sh = outer.shape[:-2]
        return (outer.reshape(sh + (d * d,)) % self.p) @ self.W % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce_outer(a[..., :, None] * b[..., None, :])

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        outer = np.einsum("ikx,kjy->ijxy", A, B)
        return self.reduce_outer(outer)

    def int_combination(self, coeffs: np.ndarray, mats: np.ndarray) -> np.ndarray:
        """sum_k coeffs[k] * mats[k] for field coeffs (K, d) and integer mats (K, n, m)."""
        return np.einsum("kx,kab->abx", coeffs, mats) % self.p

    def int_right(self, A: np.ndarray, M: np.ndarray) -> np.ndarray:
        """A @ M for a field matrix A (n, k, d) and an integer matrix M (k, m)."""
        return np.einsum("ikx,kj->ijx", A, M) % self.p

    def scale(self, s, A: np.ndarray) -> np.ndarray:
        return self.mul(A, self.encode(s)[(None,) * (A.ndim - 1)])

    def trace(self, A: np.ndarray, tvec) -> np.ndarray:
        """Elementwise trace to F_p given the trace vector of the basis."""
        return (A @ np.array(tvec, dtype=np.int64)) % self.p
