"""Regular subgroups of S(G) sharing the holomorph of a semisimple group G.

Elements of S(G) are index arrays over the elements of G, composed left to
right (see ``permgroup``). With that convention ``rho`` is a homomorphism and
``lam`` an antihomomorphism.

For a decomposition ``G = A_1 ... A_n`` and ``J`` a subset of the labels
``{1..n}``, ``G_J = rho(A_J) lam(A_{J^c})``. Every ``g`` factors as
``g = x_J x_{J^c}`` (unique up to the central intersection ``W``), and

    phi_J(x_J x_{J^c}) = x_J (x_{J^c}^alpha)^-1

with alpha inverting the center conjugates ``rho(G)`` onto ``G_J``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .catalog import l_critical_check
from .central_product import CentralDecomposition
from .constructors import CertificateRejected
from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    NotAHomomorphism,
    Subgroup,
    extend_hom,
    normal_subgroups,
)
from .permgroup import PermutationGroup, compose, conjugate_perm, is_bijection, orbit


class IllDefined(GroupError):
    pass


class ActionLeavesFamily(GroupError):
    pass


def rho(G: FiniteGroup, g: int) -> np.ndarray:
    """``x -> x g``."""
    return G.mul(G.elements, g)


def lam(G: FiniteGroup, g: int) -> np.ndarray:
    """``x -> g x``."""
    return G.mul(g, G.elements)


def inversion_perm(G: FiniteGroup) -> np.ndarray:
    return np.asarray(G.inverse).copy()


def subsets(labels) -> list:
    """All subsets, ordered by size then lexicographically."""
    labels = sorted(labels)
    return [frozenset(c) for k in range(len(labels) + 1) for c in itertools.combinations(labels, k)]


def fmt_subset(J) -> list:
    return sorted(J)


# ---------------------------------------------------------------- holomorph


@dataclass(eq=False)
class HolGroup:
    group: FiniteGroup
    rho_gens: list
    lambda_gens: list
    aut_perms: list
    order: Optional[int] = None

    @property
    def generators(self) -> list:
        return self.rho_gens + self.lambda_gens + self.aut_perms


def holomorph_group(G: FiniteGroup, aut_generators: Sequence[Homomorphism]) -> HolGroup:
    """Generators of Aut(G) x| rho(G): right and left translations plus automorphisms."""
    for alpha in aut_generators:
        if not alpha.verified or alpha.image[0] != 0 or not alpha.is_bijective:
            raise CertificateRejected("automorphism generator is not a verified bijection")
    rg = [rho(G, g) for g in G.generators]
    lg = [lam(G, g) for g in G.generators]
    for r in rg:
        for l in lg:
            if not np.array_equal(compose(r, l), compose(l, r)):
                raise CertificateRejected("right and left translations fail to commute")
    return HolGroup(G, rg, lg, [np.asarray(a.image) for a in aut_generators])


def is_automorphism_table(G: FiniteGroup, alpha: np.ndarray) -> bool:
    if alpha[0] != 0 or not is_bijection(alpha):
        return False
    x = G.elements
    return all(np.array_equal(alpha[G.mul(x, s)], G.mul(alpha, alpha[s])) for s in G.generators)


def hol_membership(sigma: np.ndarray, G: FiniteGroup):
    """Decide whether sigma lies in Hol(G).

    Every holomorph element is uniquely ``alpha rho(g)`` with ``g = 0^sigma``;
    sigma is a member iff ``x -> x^sigma g^-1`` is an automorphism. Returns
    ``(alpha, g)`` or None.
    """
    sigma = np.asarray(sigma)
    g = int(sigma[0])
    alpha = G.mul(sigma, G.inverse[g])
    return (alpha, g) if is_automorphism_table(G, alpha) else None


# ---------------------------------------------------------------- factorization


def factorization(dec: CentralDecomposition, J) -> tuple:
    """Arrays ``(x_J, x_Jc)`` with ``g = x_J[g] x_Jc[g]``; x_J is the least possible index."""
    J = frozenset(J)
    cache = dec.__dict__.setdefault("_factorization", {})
    if J in cache:
        return cache[J]
    G = dec.group
    AJ, AJc = dec.A(J).elements, dec.A(dec.complement(J)).elements
    prod = G.mul(AJ[:, None], AJc[None, :]).ravel()
    left = np.repeat(AJ, AJc.size)
    order = np.lexsort((left, prod))
    first = np.ones(order.size, dtype=bool)
    first[1:] = prod[order][1:] != prod[order][:-1]
    xJ = np.full(G.order, -1, dtype=np.int64)
    xJ[prod[order][first]] = left[order][first]
    if np.any(xJ < 0):
        raise GroupError(f"A_J A_Jc does not cover G for J={sorted(J)}")
    xJc = G.mul(G.inverse[xJ], G.elements)
    cache[J] = (xJ, xJc)
    return cache[J]


def central_intersection(dec: CentralDecomposition, J) -> np.ndarray:
    return (dec.A(J) & dec.A(dec.complement(J))).elements


# ---------------------------------------------------------------- G_J


@dataclass(eq=False)
class RegularSubgroup:
    J: frozenset
    generators: list
    rho_elements: tuple
    lambda_elements: tuple
    decomposition: CentralDecomposition = field(repr=False)

    def __contains__(self, sigma) -> bool:
        return gj_membership(sigma, self.J, self.decomposition)

    def transversal(self) -> np.ndarray:
        """Row g is the unique element sending 0 to g (``N x N``)."""
        G = self.decomposition.group
        xJ, xJc = factorization(self.decomposition, self.J)
        x = G.elements
        return G.mul(G.mul(xJc[:, None], x[None, :]), xJ[:, None])


def build_GJ(J, dec: CentralDecomposition, hol: Optional[HolGroup] = None) -> RegularSubgroup:
    """``G_J`` with its regularity (and, given ``hol``, normality in Hol) verified.

    Regularity: G_J is transitive, and it commutes elementwise with the
    transitive group ``G_{J^c}``; the centralizer of a transitive group is
    semiregular, so G_J is regular.
    """
    J = frozenset(J)
    G = dec.group
    Jc = dec.complement(J)
    rg = tuple(g for r in sorted(J) for g in dec.factors[r - 1].generators)
    lg = tuple(g for r in sorted(Jc) for g in dec.factors[r - 1].generators)
    gens = [rho(G, g) for g in rg] + [lam(G, g) for g in lg]
    other = [rho(G, g) for g in lg] + [lam(G, g) for g in rg]
    for perms in (gens, other):
        if orbit(0, perms).size != G.order:
            raise GroupError(f"G_J not transitive for J={sorted(J)}")
    for a in gens:
        for b in other:
            if not np.array_equal(compose(a, b), compose(b, a)):
                raise GroupError(f"G_J and G_Jc do not commute for J={sorted(J)}")
    sub = RegularSubgroup(J, gens, rg, lg, dec)
    if hol is not None:
        for h in hol.generators:
            for s in gens:
                if not gj_membership(conjugate_perm(s, h), J, dec):
                    raise GroupError(f"G_J not normalized by the holomorph for J={sorted(J)}")
    return sub


def gj_membership(sigma: np.ndarray, J, dec: CentralDecomposition) -> bool:
    """Whether sigma equals ``rho(x) lam(y)`` for some x in A_J, y in A_Jc."""
    G = dec.group
    sigma = np.asarray(sigma)
    g = int(sigma[0])
    xJ, _ = factorization(dec, J)
    x0 = xJ[g]
    X = G.elements
    for w in central_intersection(dec, J):
        x = int(G.mul(x0, w))
        y = int(G.mul(G.inverse[x], g))
        if np.array_equal(sigma, G.mul(G.mul(y, X), x)):
            return True
    return False


# ---------------------------------------------------------------- phi_J and the twisted products


def phi_J(J, alpha: Homomorphism, dec: CentralDecomposition) -> np.ndarray:
    """``x_J x_Jc -> x_J (x_Jc^alpha)^-1`` as a permutation of G.

    ``alpha`` is an automorphism of G mapping A_Jc to itself and inverting
    the intersection of A_J and A_Jc; only its values on A_Jc are used.
    Well-definedness is checked over every factorization.
    """
    J = frozenset(J)
    G = dec.group
    a = np.asarray(alpha.image)
    AJc = dec.A(dec.complement(J))
    if not AJc.mask[a[AJc.elements]].all():
        raise IllDefined("alpha does not preserve A_Jc")
    W = central_intersection(dec, J)
    if not np.array_equal(a[W], G.inverse[W]):
        raise IllDefined("alpha does not invert the central intersection")
    xJ, xJc = factorization(dec, J)
    phi = G.mul(xJ, G.inverse[a[xJc]])
    for w in W[1:]:
        alt = G.mul(G.mul(xJ, w), G.inverse[a[G.mul(G.inverse[w], xJc)]])
        if not np.array_equal(alt, phi):
            raise IllDefined(f"factorizations disagree for J={sorted(J)}")
    if not is_bijection(phi):
        raise IllDefined("phi_J is not a bijection")
    return phi


class CircGroup(FiniteGroup):
    """G with the twisted product ``g o h = g_J h_J h_Jc g_Jc``."""

    def __init__(self, dec: CentralDecomposition, J):
        self.J = frozenset(J)
        self.base = dec.group
        self.xJ, self.xJc = factorization(dec, self.J)
        gens = [g for A in dec.factors for g in A.generators]
        super().__init__(self.base.order, gens, f"({self.base.name}, o_{fmt_subset(self.J)})")
        self.inverse = np.asarray(self.base.inverse)

    def mul(self, a, b):
        G, xJ, xJc = self.base, self.xJ, self.xJc
        return G.mul(G.mul(xJ[a], xJ[b]), G.mul(xJc[b], xJc[a]))


class OppositeGroup(FiniteGroup):
    def __init__(self, G: FiniteGroup):
        super().__init__(G.order, G.generators, f"{G.name}^op")
        self.base = G
        self.inverse = np.asarray(G.inverse)

    def mul(self, a, b):
        return self.base.mul(b, a)


def circ_group(J, dec: CentralDecomposition) -> CircGroup:
    return CircGroup(dec, J)


def same_operation(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Whether the identity map A -> B is a homomorphism (edge check over A's generators)."""
    try:
        hom = extend_hom(A, B, A.generators)
    except NotAHomomorphism:
        return False
    return bool(np.array_equal(hom.image, A.elements))


def is_isomorphism_table(A: FiniteGroup, B: FiniteGroup, table: np.ndarray) -> bool:
    if not is_bijection(table):
        return False
    try:
        hom = extend_hom(A, B, table[list(A.generators)])
    except NotAHomomorphism:
        return False
    return bool(np.array_equal(hom.image, table))


# ---------------------------------------------------------------- H(G) and T(G)


def compute_H_set(dec) -> tuple:
    """The subsets J with G_J in H(G), and h with ``|H(G)| = 2^h``.

    Subsets avoiding the exceptional factors, and their complements, always
    qualify. Any other R qualifies iff for every exceptional r in R and
    exceptional s outside R, the intersection of A_r and A_s contains no
    critical central subgroup of a component of A_r or A_s.
    """
    labels = range(1, dec.n + 1)
    I = frozenset(labels)
    Lset = dec.l_indices
    family = []
    for R in subsets(labels):
        if not (R & Lset) or not ((I - R) & Lset):
            family.append(R)
            continue
        ok = True
        for r in R & Lset:
            for s in (I - R) & Lset:
                inv = dec.intersection_invariants(r, s)
                comps = dec.component_descriptors(r) + dec.component_descriptors(s)
                if any(d is not None and l_critical_check(inv, d) for d in comps):
                    ok = False
        if ok:
            family.append(R)
    h = int(round(math.log2(len(family))))
    if 2**h != len(family):
        raise GroupError(f"|H(G)| = {len(family)} is not a power of 2")
    return family, h


@dataclass
class TGroupReport:
    family: list
    conjugators: dict
    action: dict
    order: int
    rank: int
    regular: bool
    elementary_abelian: bool
    squares_trivial: bool

    @property
    def abelian_invariants(self) -> list:
        return [2] * self.rank


def conjugate_family_member(sigma: np.ndarray, J, family, dec: CentralDecomposition, gj_cache: dict):
    """The K in ``family`` with ``G_J^sigma = G_K``; raises ActionLeavesFamily."""
    conj = [conjugate_perm(s, sigma) for s in gj_cache[frozenset(J)].generators]
    for K in family:
        if all(gj_membership(c, K, dec) for c in conj):
            return K
    raise ActionLeavesFamily(f"a conjugate of G_{fmt_subset(J)} is no G_K")


def t_group(dec: CentralDecomposition, conjugators: dict, family: Optional[list] = None,
            gj_cache: Optional[dict] = None) -> TGroupReport:
    """Conjugation action of ``conjugators`` (name -> permutation) on ``{G_J : J in family}``.

    The induced permutations generate the image of T(G) in Sym(family); the
    report records its order, whether it is elementary abelian, whether the
    action is regular, and whether each conjugator squared fixes every member.
    """
    family = compute_H_set(dec)[0] if family is None else family
    gj_cache = gj_cache if gj_cache is not None else {}
    for J in family:
        if J not in gj_cache:
            gj_cache[J] = build_GJ(J, dec)
    pos = {J: i for i, J in enumerate(family)}
    action = {}
    squares_trivial = True
    for name, sigma in conjugators.items():
        action[name] = tuple(pos[conjugate_family_member(sigma, J, family, dec, gj_cache)] for J in family)
        sq = compose(sigma, sigma)
        for J in family:
            if conjugate_family_member(sq, J, family, dec, gj_cache) != J:
                squares_trivial = False
    # closure of the induced permutations
    ident = tuple(range(len(family)))
    elements = {ident}
    frontier = [ident]
    gens = list(set(action.values()))
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in elements:
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    involutive = all(tuple(g[i] for i in g) == ident for g in gens)
    commuting = all(tuple(a[i] for i in b) == tuple(b[i] for i in a) for a in gens for b in gens)
    transitive = len({p[0] for p in elements}) == len(family)
    order = len(elements)
    return TGroupReport(
        family=family,
        conjugators=conjugators,
        action=action,
        order=order,
        rank=int(round(math.log2(order))),
        regular=transitive and order == len(family),
        elementary_abelian=involutive and commuting,
        squares_trivial=squares_trivial,
    )


# ---------------------------------------------------------------- brute-force oracle


def realize_holomorph(hol: HolGroup, guard: int = 20_000) -> PermutationGroup:
    G = hol.group
    P = PermutationGroup(hol.generators, max_order=guard, name=f"Hol({G.name})")
    hol.order = P.order
    return P


def brute_force_J_oracle(G: FiniteGroup, hol: HolGroup, guard: int = 20_000,
                         dec: Optional[CentralDecomposition] = None) -> list:
    """Normal subgroups of Hol(G) of order |G| acting regularly on G.

    Enumerates Hol(G) and its normal-subgroup lattice outright. Returns a list
    of ``(subgroup, J)`` where J is the label set of the matching G_J (None if
    no G_J matches).
    """
    P = realize_holomorph(hol, guard)
    found = []
    for S in normal_subgroups(P):
        if S.order != G.order:
            continue
        if np.unique(P.perms[S.elements, 0]).size != G.order:
            continue
        J = None
        if dec is not None:
            for K in subsets(dec.labels):
                T = build_GJ(K, dec).transversal()
                mask = np.zeros(P.order, dtype=bool)
                mask[P.index_of(T)] = True
                if Subgroup(mask) == S:
                    J = K
                    break
        found.append((S, J))
    return found
