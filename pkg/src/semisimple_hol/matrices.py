"""Matrix groups over small finite fields, enumerated by closure."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .fields import FiniteField
from .groups import TABLE_LIMIT, FiniteGroup, GroupError


class MatrixGroup(FiniteGroup):
    """The group generated by a list of invertible matrices.

    Elements are indexed in breadth-first order from the identity matrix. A
    Cayley table is materialized when the order is at most ``TABLE_LIMIT``;
    otherwise products are computed on demand and looked up by matrix code.
    """

    def __init__(self, field: FiniteField, generator_matrices, name: str = "", max_order: int = 10**6):
        gens = np.asarray(generator_matrices, dtype=np.int64)
        self.field = field
        self.dim = gens.shape[-1]
        ident = np.eye(self.dim, dtype=np.int64)
        seen = {int(field.encode(ident))}
        mats = [ident[None]]
        frontier = ident[None]
        while frontier.size:
            prod = field.matmul(frontier[:, None], gens[None]).reshape(-1, self.dim, self.dim)
            codes = field.encode(prod)
            _, first = np.unique(codes, return_index=True)
            keep = [i for i in np.sort(first) if int(codes[i]) not in seen]
            seen.update(int(codes[i]) for i in keep)
            frontier = prod[keep]
            mats.append(frontier)
            if len(seen) > max_order:
                raise GroupError(f"closure exceeds {max_order} elements")
        self.matrices = np.concatenate(mats)
        codes = field.encode(self.matrices)
        self._codes_sorted = np.sort(codes)
        self._code_rank = np.argsort(codes)
        super().__init__(len(self.matrices), [], name)
        self.generators = tuple(int(i) for i in self.index_of(gens))
        self.generator_matrices = gens
        self._table = None
        if self.order <= TABLE_LIMIT:
            x = self.elements
            self._table = self._lookup_mul(x[:, None], x[None, :])

    def index_of(self, matrices) -> np.ndarray:
        codes = self.field.encode(np.asarray(matrices))
        pos = np.searchsorted(self._codes_sorted, codes)
        pos = np.minimum(pos, self.order - 1)
        if np.any(self._codes_sorted[pos] != codes):
            raise GroupError("matrix not in group")
        return self._code_rank[pos]

    def _lookup_mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        prod = self.field.matmul(self.matrices[a], self.matrices[b])
        return self.index_of(prod)

    def mul(self, a, b):
        if self._table is not None:
            return self._table[a, b]
        return self._lookup_mul(a, b)

    @cached_property
    def inverse(self) -> np.ndarray:
        if self._table is not None:
            return np.argmax(self._table == 0, axis=1)
        x = self.elements
        orders = self.element_orders
        # x^-1 = x^(order-1)
        result = np.zeros_like(x)
        for k in np.unique(orders):
            sel = x[orders == k]
            result[sel] = self.power(sel, int(k) - 1)
        return result


def transvection(dim: int, i: int, j: int, t: int) -> np.ndarray:
    m = np.eye(dim, dtype=np.int64)
    m[i, j] = t
    return m
