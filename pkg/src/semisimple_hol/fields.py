"""Arithmetic in the small fields F4, F5, F7, with vectorized matrix products."""

from __future__ import annotations

import numpy as np


class FiniteField:
    """Field of order q in {2, 3, 4, 5, 7}, elements encoded as 0..q-1.

    For q = 4 the element ``b1*2 + b0`` stands for ``b1*x + b0`` in
    F2[x]/(x^2+x+1); addition is XOR.
    """

    def __init__(self, q: int):
        if q not in (2, 3, 4, 5, 7):
            raise ValueError(f"unsupported field order {q}")
        self.q = q
        r = np.arange(q)
        if q == 4:
            self.char = 2
            self.add = r[:, None] ^ r[None, :]
            self.mul = np.array([[_f4_mul(a, b) for b in range(4)] for a in range(4)], dtype=np.int64)
        else:
            self.char = q
            self.add = (r[:, None] + r[None, :]) % q
            self.mul = (r[:, None] * r[None, :]) % q
        self.neg = np.argmax(self.add == 0, axis=1)
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[1:] = np.argmax(self.mul[1:] == 1, axis=1)

    def __repr__(self):
        return f"F{self.q}"

    @property
    def primitive(self) -> int:
        """Least generator of the multiplicative group."""
        for a in range(2, self.q):
            x, k = a, 1
            while x != 1:
                x, k = self.mul[x, a], k + 1
            if k == self.q - 1:
                return a
        return 1

    def is_square(self, a: int) -> bool:
        return a in set(self.mul[np.arange(self.q), np.arange(self.q)].tolist())

    def _sum(self, arr, axis):
        if self.char == 2:
            return np.bitwise_xor.reduce(arr, axis=axis)
        return arr.sum(axis=axis) % self.q

    def matmul(self, A, B):
        """Product of (stacks of) square matrices, broadcasting leading axes."""
        A, B = np.asarray(A), np.asarray(B)
        prod = self.mul[A[..., :, :, None], B[..., None, :, :]]
        return self._sum(prod, axis=-2)

    def det(self, A) -> np.ndarray:
        A = np.asarray(A)
        n = A.shape[-1]
        if n == 2:
            a = self.mul[A[..., 0, 0], A[..., 1, 1]]
            b = self.mul[A[..., 0, 1], A[..., 1, 0]]
            return self.add[a, self.neg[b]]
        if n == 3:
            total = np.zeros(A.shape[:-2], dtype=np.int64)
            for (i, j, k), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                                    ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
                t = self.mul[self.mul[A[..., 0, i], A[..., 1, j]], A[..., 2, k]]
                total = self.add[total, t if sign > 0 else self.neg[t]]
            return total
        raise ValueError("det only for 2x2 and 3x3")

    def encode(self, A) -> np.ndarray:
        """Integer code of each matrix: entries read row-major as base-q digits."""
        A = np.asarray(A)
        flat = A.reshape(A.shape[:-2] + (-1,))
        weights = self.q ** np.arange(flat.shape[-1], dtype=np.int64)
        return flat @ weights

    def decode(self, codes, dim: int) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        digits = (codes[..., None] // self.q ** np.arange(dim * dim, dtype=np.int64)) % self.q
        return digits.reshape(codes.shape + (dim, dim))


def _f4_mul(a: int, b: int) -> int:
    # carry-less product then reduce by x^2 = x + 1
    p = 0
    for i in range(2):
        if (b >> i) & 1:
            p ^= a << i
    if p & 4:
        p ^= 0b111
    return p
