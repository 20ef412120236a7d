"""Permutations as index arrays, and small permutation groups realized as ``FiniteGroup``.

Maps compose left to right: ``compose(s, t)`` applies s first, then t, so
``x^(st) = (x^s)^t``. As arrays that is ``t[s]``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .groups import FiniteGroup, GroupError, GuardExceeded


def identity_perm(n: int) -> np.ndarray:
    return np.arange(n)


def compose(*perms) -> np.ndarray:
    result = perms[0]
    for p in perms[1:]:
        result = p[result]
    return result


def perm_inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(p.size)
    return inv


def conjugate_perm(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``s^t = t^-1 s t``."""
    return t[s[perm_inverse(t)]]


def is_bijection(p: np.ndarray) -> bool:
    return np.array_equal(np.sort(p), np.arange(p.size))


def orbit(point: int, perms) -> np.ndarray:
    n = perms[0].size
    seen = np.zeros(n, dtype=bool)
    seen[point] = True
    frontier = np.array([point])
    while frontier.size:
        nxt = np.unique(np.concatenate([p[frontier] for p in perms]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


class PermutationGroup(FiniteGroup):
    """The group generated by permutations of ``0..degree-1``, fully enumerated.

    Elements are indexed in breadth-first order from the identity. Products are
    looked up through the images of a base (a point tuple whose images
    determine the permutation), so no Cayley table is stored.
    """

    def __init__(self, generators, max_order: int = 50_000, name: str = ""):
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        self.degree = gens[0].size
        dtype = np.uint8 if self.degree <= 256 else np.int32
        ident = np.arange(self.degree)
        index = {ident.astype(dtype).tobytes(): 0}
        perms = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = g[p]
                    key = q.astype(dtype).tobytes()
                    if key not in index:
                        index[key] = len(perms)
                        perms.append(q)
                        nxt.append(q)
                        if len(perms) > max_order:
                            raise GuardExceeded(f"permutation group exceeds {max_order} elements")
            frontier = nxt
        self.perms = np.array(perms)
        self.base = self._find_base()
        self._weights = self.degree ** np.arange(len(self.base), dtype=np.int64)
        codes = self._codes(self.perms[:, self.base])
        self._sorted = np.sort(codes)
        self._rank = np.argsort(codes)
        super().__init__(len(perms), [], name)
        self.generators = tuple(int(i) for i in self.index_of(np.array(gens)))

    def _find_base(self) -> list:
        base = []
        distinct = 1
        for pt in range(self.degree):
            if distinct == len(self.perms):
                break
            trial = base + [pt]
            n = np.unique(self.perms[:, trial], axis=0).shape[0]
            if n > distinct:
                base, distinct = trial, n
        if self.degree ** len(base) >= 2**62:
            raise GroupError("base too long for integer codes")
        return base

    def _codes(self, images) -> np.ndarray:
        return (np.asarray(images, dtype=np.int64) * self._weights).sum(axis=-1)

    def index_of(self, perms) -> np.ndarray:
        perms = np.asarray(perms)
        codes = self._codes(perms[..., self.base])
        pos = np.minimum(np.searchsorted(self._sorted, codes), self.order - 1)
        found = self._rank[pos]
        if np.any(self._sorted[pos] != codes) or np.any(self.perms[found] != perms):
            raise GroupError("permutation not in group")
        return found

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        imgs = self.perms[b[..., None], self.perms[a][..., self.base]]
        codes = self._codes(imgs)
        return self._rank[np.searchsorted(self._sorted, codes)]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty_like(self.perms)
        rows = np.arange(self.order)[:, None]
        inv[rows, self.perms] = np.arange(self.degree)[None, :]
        return self.index_of(inv)
