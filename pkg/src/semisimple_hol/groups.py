"""Element-indexed finite groups.

Every group here has elements ``0..order-1`` with the identity at index 0.
Subclasses only supply a vectorized ``mul`` (numpy broadcasting over index
arrays) and an ``inverse`` table; everything else (closures, centers, classes,
normal subgroups, homomorphism extension, isomorphism search) is written once
against that interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

# Above this many elements no full Cayley table is stored.
TABLE_LIMIT = 5000
DEFAULT_GUARD = 10**6


class GroupError(Exception):
    pass


class NotAHomomorphism(GroupError):
    """Raised when a generator assignment fails the Cayley-edge check."""

    def __init__(self, element: int, generator: int):
        super().__init__(f"edge check failed at element {element}, generator {generator}")
        self.element = element
        self.generator = generator


class SearchBudgetExceeded(GroupError):
    def __init__(self, tried: int):
        super().__init__(f"search budget exhausted after {tried} candidates")
        self.tried = tried


class GuardExceeded(GroupError):
    pass


class FiniteGroup:
    """A finite group on the index set ``0..order-1``."""

    def __init__(self, order: int, generators: Sequence[int], name: str = ""):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = int(order)
        self.generators = tuple(int(g) for g in generators) or (0,)
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or '?'} of order {self.order}>"

    def __len__(self):
        return self.order

    def mul(self, a, b):
        raise NotImplementedError

    @cached_property
    def inverse(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def commutator(self, a, b):
        inv = self.inverse
        return self.mul(self.mul(inv[a], inv[b]), self.mul(a, b))

    def conjugate(self, x, g):
        """``g^-1 x g``, vectorized in ``x``."""
        return self.mul(self.mul(self.inverse[g], x), g)

    def power(self, x, k: int):
        result = np.zeros_like(np.asarray(x))
        for _ in range(k):
            result = self.mul(result, x)
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        orders[0] = 1
        pending = np.arange(1, self.order)
        base = pending.copy()
        cur = pending.copy()
        k = 1
        while pending.size:
            k += 1
            cur = self.mul(cur, base)
            hit = cur == 0
            orders[pending[hit]] = k
            pending, base, cur = pending[~hit], base[~hit], cur[~hit]
        return orders

    def check_axioms(self, samples: int = 10_000, seed: int = 0) -> None:
        """Identity and inverse laws on every element; associativity on random triples."""
        x = self.elements
        if not (np.array_equal(self.mul(0, x), x) and np.array_equal(self.mul(x, 0), x)):
            raise GroupError("identity law fails")
        if np.any(self.mul(x, self.inverse) != 0):
            raise GroupError("inverse law fails")
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.order, size=(3, samples))
        if np.any(self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))):
            raise GroupError("associativity fails")


class TableGroup(FiniteGroup):
    """A group stored as a full Cayley table."""

    def __init__(self, table: np.ndarray, generators: Sequence[int], name: str = ""):
        table = np.asarray(table)
        super().__init__(table.shape[0], generators, name)
        self.table = table

    def mul(self, a, b):
        return self.table[a, b]

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup as a boolean mask over the element indices plus the generators used to build it."""

    mask: np.ndarray
    generators: tuple = ()

    @cached_property
    def order(self) -> int:
        return int(np.count_nonzero(self.mask))

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def issubset(self, other: "Subgroup") -> bool:
        return not np.any(self.mask & ~other.mask)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.mask & other.mask)

    def sort_key(self):
        # (order, least non-identity element)
        els = self.elements
        return (self.order, int(els[1]) if els.size > 1 else 0)


def _grow(G: FiniteGroup, mask: np.ndarray, frontier: np.ndarray, gens: np.ndarray) -> np.ndarray:
    while frontier.size:
        prod = G.mul(frontier[:, None], gens[None, :]).ravel()
        prod = np.unique(prod[~mask[prod]])
        mask[prod] = True
        frontier = prod
    return mask


def closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``.

    Right multiplication by the generators alone suffices: in a finite group
    the inverse of ``g`` is a positive power of ``g``.
    """
    gens = tuple(int(g) for g in gens)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if gens:
        _grow(G, mask, np.array([0]), np.array(gens))
    return Subgroup(mask, gens)


def subgroup_generated(G: FiniteGroup, elements: Iterable[int], base: Optional[Subgroup] = None) -> Subgroup:
    """Closure of ``base`` together with ``elements``.

    Elements are added one at a time, and only when not already present, so
    the recorded generator list stays short.
    """
    if base is None:
        base = closure(G, ())
    gens = list(base.generators)
    mask = base.mask.copy()
    for x in np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements).ravel():
        x = int(x)
        if mask[x]:
            continue
        gens.append(x)
        _grow(G, mask, np.flatnonzero(mask), np.array(gens))
    return Subgroup(mask, tuple(gens))


def normal_closure(G: FiniteGroup, S: Subgroup, conjugators: Optional[Sequence[int]] = None) -> Subgroup:
    conjugators = G.generators if conjugators is None else conjugators
    while True:
        els = S.elements
        grew = False
        for g in conjugators:
            conj = G.conjugate(els, g)
            missing = conj[~S.mask[conj]]
            if missing.size:
                S = subgroup_generated(G, missing, base=S)
                grew = True
                els = S.elements
        if not grew:
            return S


def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._cache:
        x = G.elements
        mask = np.ones(G.order, dtype=bool)
        for g in G.generators:
            mask &= G.mul(x, g) == G.mul(g, x)
        G._cache["center"] = subgroup_generated(G, np.flatnonzero(mask))
    return G._cache["center"]


def derived_subgroup(G: FiniteGroup, sub: Optional[Subgroup] = None) -> Subgroup:
    """Normal closure (inside ``sub``, default all of G) of the commutators of generator pairs."""
    if sub is None:
        if "derived" in G._cache:
            return G._cache["derived"]
        gens = G.generators
    else:
        gens = sub.generators
    comms = [int(G.commutator(a, b)) for i, a in enumerate(gens) for b in gens[i + 1:]]
    D = normal_closure(G, subgroup_generated(G, comms), conjugators=gens)
    if sub is None:
        G._cache["derived"] = D
    return D


def is_perfect(G: FiniteGroup, sub: Optional[Subgroup] = None) -> bool:
    D = derived_subgroup(G, sub)
    return D.order == (G.order if sub is None else sub.order)


def conjugacy_labels(G: FiniteGroup) -> np.ndarray:
    """Class label of each element; labels are numbered by least element of the class."""
    if "class_labels" not in G._cache:
        x = G.elements
        rows = np.concatenate([x for _ in G.generators])
        cols = np.concatenate([G.conjugate(x, g) for g in G.generators])
        graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(G.order, G.order))
        _, raw = connected_components(graph, directed=True, connection="weak")
        # renumber by first occurrence, i.e. by least element
        _, first, inv = np.unique(raw, return_index=True, return_inverse=True)
        rank = np.argsort(np.argsort(first))
        G._cache["class_labels"] = rank[inv]
    return G._cache["class_labels"]


def conjugacy_classes(G: FiniteGroup) -> list:
    labels = conjugacy_labels(G)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    return np.split(order, bounds)


def class_sizes(G: FiniteGroup) -> np.ndarray:
    """Size of the conjugacy class of each element."""
    labels = conjugacy_labels(G)
    return np.bincount(labels)[labels]


def normal_subgroups(G: FiniteGroup, max_count_guard: int = DEFAULT_GUARD) -> list:
    """All normal subgroups, as joins of normal closures of conjugacy classes.

    Every normal subgroup is the join of the classes it contains, so closing the
    class closures under joins reaches the whole lattice.
    """
    if "normal" in G._cache:
        return G._cache["normal"]
    trivial = closure(G, ())
    found = {trivial.key: trivial}
    atoms = []
    for cls in conjugacy_classes(G)[1:]:
        A = subgroup_generated(G, cls)
        if A.key not in found:
            found[A.key] = A
            atoms.append(A)
    frontier = list(atoms)
    while frontier:
        nxt = []
        for X in frontier:
            for A in atoms:
                if A.issubset(X):
                    continue
                Y = subgroup_generated(G, A.generators, base=X)
                if Y.key not in found:
                    found[Y.key] = Y
                    nxt.append(Y)
                    if len(found) > max_count_guard:
                        raise GuardExceeded(f"more than {max_count_guard} normal subgroups")
        frontier = nxt
    result = sorted(found.values(), key=Subgroup.sort_key)
    G._cache["normal"] = result
    return result


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    els = S.elements
    return all(S.mask[G.conjugate(els, g)].all() for g in G.generators)


class QuotientGroup(FiniteGroup):
    """``G / N`` for a normal subgroup N.

    Each coset is represented by its least element index; quotient indices are
    the ranks of those representatives, so the identity coset is index 0.
    Multiplication is lazy: multiply representatives in G and project back.
    """

    def __init__(self, parent: FiniteGroup, normal: Subgroup, name: str = ""):
        if not is_normal(parent, normal):
            raise GroupError("quotient by a non-normal subgroup")
        x = parent.elements
        canon = x.copy()
        for n in normal.elements[1:]:
            np.minimum(canon, parent.mul(x, n), out=canon)
        self.parent = parent
        self.normal = normal
        self.representatives = np.unique(canon)
        self.projection = np.searchsorted(self.representatives, canon)
        gens = sorted({int(self.projection[g]) for g in parent.generators} - {0})
        super().__init__(self.representatives.size, gens, name or f"{parent.name}/N")

    def mul(self, a, b):
        reps = self.representatives
        return self.projection[self.parent.mul(reps[a], reps[b])]

    @cached_property
    def inverse(self) -> np.ndarray:
        return self.projection[self.parent.inverse[self.representatives]]

    def preimage(self, S: Subgroup) -> Subgroup:
        mask = S.mask[self.projection]
        gens = [int(self.representatives[g]) for g in S.generators] + list(self.normal.generators)
        return Subgroup(mask, tuple(gens))


def subgroup_as_group(G: FiniteGroup, S: Subgroup, generators: Optional[Sequence[int]] = None, name: str = ""):
    """Re-index a subgroup of G as a stand-alone ``TableGroup``.

    The result carries ``embedding``: local index -> index in G.
    """
    els = S.elements
    local = np.full(G.order, -1, dtype=np.int64)
    local[els] = np.arange(els.size)
    table = local[G.mul(els[:, None], els[None, :])]
    gens = S.generators if generators is None else generators
    H = TableGroup(table, [int(local[g]) for g in gens], name)
    H.embedding = els
    return H


def is_quasisimple(G: FiniteGroup) -> bool:
    """Perfect, and simple modulo the center."""
    if G.order == 1 or not is_perfect(G):
        return False
    Z = center(G)
    if Z.order == G.order:
        return False
    return len(normal_subgroups(QuotientGroup(G, Z))) == 2


def abelian_invariants(G: FiniteGroup, S: Subgroup) -> tuple:
    """Prime-power invariants of an abelian subgroup, e.g. ``(2, 2, 3)``.

    For each prime p, the number of elements of order dividing p^k equals
    p^(sum_i min(e_i, k)); differences of the exponents give the p-partition.
    """
    orders = G.element_orders[S.elements]
    result = []
    for p in _primes_dividing(S.order):
        k = 0
        counts = []
        while True:
            c = int(np.count_nonzero(np.gcd(orders, p ** (k + 1)) == orders))
            counts.append(c)
            if k > 0 and counts[-1] == counts[-2]:
                break
            k += 1
        logs = [0] + [round(np.log(c) / np.log(p)) for c in counts]
        # logs[k] - logs[k-1] = number of cyclic factors of exponent >= k
        ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        for e in range(len(ge), 0, -1):
            mult = ge[e - 1] - (ge[e] if e < len(ge) else 0)
            result.extend([p**e] * mult)
    return tuple(sorted(result))


def _primes_dividing(n: int) -> list:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


# ---------------------------------------------------------------- homomorphisms


@dataclass(eq=False)
class Homomorphism:
    """A map of index tables, verified on every Cayley edge of the source."""

    source: FiniteGroup
    target: FiniteGroup
    image: np.ndarray
    generators: tuple
    generator_images: tuple
    verified: bool = False

    def __call__(self, x):
        return self.image[x]

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and np.unique(self.image).size == self.image.size

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Composite ``x -> other(self(x))``."""
        return extend_hom(self.source, other.target, other.image[np.asarray(self.generator_images)], self.generators)


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, G.elements, G.generators, G.generators, verified=True)


def cayley_layers(G: FiniteGroup, generators: Optional[Sequence[int]] = None) -> list:
    """Breadth-first spanning tree of the Cayley graph.

    Returns layers ``(elements, predecessors, generator_positions)`` with
    ``element = mul(predecessor, generators[position])``.
    """
    gens = tuple(G.generators if generators is None else generators)
    key = ("tree", gens)
    if key in G._cache:
        return G._cache[key]
    garr = np.array(gens)
    k = garr.size
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    layer = np.array([0])
    layers = []
    while layer.size:
        prod = G.mul(layer[:, None], garr[None, :]).ravel()
        fresh = np.flatnonzero(~seen[prod])
        vals, first = np.unique(prod[fresh], return_index=True)
        pos = fresh[first]
        seen[vals] = True
        if vals.size:
            layers.append((vals, layer[pos // k], pos % k))
        layer = vals
    if not seen.all():
        raise GroupError("generators do not generate the group")
    G._cache[key] = layers
    return layers


def extend_hom(source: FiniteGroup, target: FiniteGroup, generator_images: Sequence[int],
               generators: Optional[Sequence[int]] = None) -> Homomorphism:
    """Extend a generator assignment along the Cayley tree and verify it.

    Verification checks ``f(x s) == f(x) f(s)`` for every element x and every
    generator s. Every element is a positive word in the generators, so by
    induction on word length this gives ``f(x w) == f(x) f(w)`` for all x, w.
    """
    gens = tuple(source.generators if generators is None else generators)
    imgs = np.asarray(generator_images, dtype=np.int64)
    if imgs.size != len(gens):
        raise ValueError("need exactly one image per generator")
    image = np.zeros(source.order, dtype=np.int64)
    for els, preds, pos in cayley_layers(source, gens):
        image[els] = target.mul(image[preds], imgs[pos])
    x = source.elements
    for k, s in enumerate(gens):
        bad = image[source.mul(x, s)] != target.mul(image, imgs[k])
        if bad.any():
            raise NotAHomomorphism(int(np.argmax(bad)), s)
    return Homomorphism(source, target, image, gens, tuple(int(i) for i in imgs), verified=True)


def _word_checks(G: FiniteGroup, gens: Sequence[int]):
    """Short words in pairs of generators whose orders any isomorphism must preserve."""
    words = []
    for i in range(len(gens)):
        for j in range(i):
            words.append((j, i, lambda H, a, b: H.mul(a, b)))
            words.append((j, i, lambda H, a, b: H.mul(H.inverse[a], b)))
            words.append((j, i, lambda H, a, b: H.commutator(a, b)))
    orders = G.element_orders
    return [(j, i, f, int(orders[f(G, gens[j], gens[i])])) for j, i, f in words]


def search_isomorphism(G: FiniteGroup, H: FiniteGroup, constraint: Optional[Callable[[Homomorphism], bool]] = None,
                       budget: int = 10**6, up_to_inner: bool = True) -> Optional[Homomorphism]:
    """Find an isomorphism G -> H satisfying ``constraint``, or return None.

    Candidate images of each generator must match its element order and class
    size; they are tried in increasing class-size order, then by index. Pairs
    of generators are further filtered by the orders of ``ab``, ``a^-1 b`` and
    ``[a, b]``. With ``up_to_inner`` the first generator's image ranges over
    one element per class, which is exhaustive whenever ``constraint`` is
    unchanged by composing with inner automorphisms of H (true for conditions
    on the action on central elements). When G is H the identity is tried first.
    """
    if G.order != H.order:
        return None
    constraint = constraint or (lambda hom: True)
    if G is H:
        ident = identity_hom(G)
        if constraint(ident):
            return ident
    gens = G.generators
    ordG, ordH = G.element_orders, H.element_orders
    csG, csH = class_sizes(G), class_sizes(H)
    labels = conjugacy_labels(H)
    candidates = []
    for k, s in enumerate(gens):
        c = np.flatnonzero((ordH == ordG[s]) & (csH == csG[s]))
        c = c[np.lexsort((c, csH[c]))]
        if k == 0 and up_to_inner:
            _, first = np.unique(labels[c], return_index=True)
            c = c[np.sort(first)]
        candidates.append(c)
    checks = _word_checks(G, gens)
    tried = 0

    def descend(chosen):
        nonlocal tried
        k = len(chosen)
        if k == len(gens):
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(tried)
            try:
                hom = extend_hom(G, H, chosen)
            except NotAHomomorphism:
                return None
            if np.count_nonzero(hom.image == 0) != 1:
                return None
            return hom if constraint(hom) else None
        c = candidates[k]
        for j, i, f, want in checks:
            if i == k and c.size:
                c = c[ordH[f(H, chosen[j], c)] == want]
        for x in c:
            found = descend(chosen + [int(x)])
            if found is not None:
                return found
        return None

    return descend([])


def inverts_center(hom: Homomorphism) -> bool:
    G = hom.source
    Z = center(G).elements
    return bool(np.array_equal(hom.image[Z], G.inverse[Z]))


def search_inverting_automorphism(K: FiniteGroup, budget: int = 10**6) -> Optional[Homomorphism]:
    """An automorphism of the quasisimple group K acting as inversion on Z(K)."""
    if not is_quasisimple(K):
        raise GroupError(f"{K!r} is not quasisimple")
    ident = identity_hom(K)
    if inverts_center(ident):
        return ident
    return search_isomorphism(K, K, constraint=inverts_center, budget=budget)


def all_automorphisms(G: FiniteGroup) -> list:
    """Every automorphism, by exhaustive generator-image enumeration (small groups only)."""
    gens = G.generators
    ordG, csG = G.element_orders, class_sizes(G)
    pools = [np.flatnonzero((ordG == ordG[s]) & (csG == csG[s])) for s in gens]
    out = []

    def descend(chosen):
        if len(chosen) == len(gens):
            try:
                hom = extend_hom(G, G, chosen)
            except NotAHomomorphism:
                return
            if np.count_nonzero(hom.image == 0) == 1:
                out.append(hom)
            return
        for x in pools[len(chosen)]:
            descend(chosen + [int(x)])

    descend([])
    return out


def inner_automorphism(G: FiniteGroup, g: int) -> Homomorphism:
    """``x -> g^-1 x g``."""
    imgs = G.conjugate(np.array(G.generators), g)
    return extend_hom(G, G, imgs)
