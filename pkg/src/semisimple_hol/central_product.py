"""Central products of quasisimple groups and their Aut-invariant decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .catalog import DescriptorDecomposition, QuasisimpleDescriptor, in_L
from .constructors import BuiltinFactor, CertificateRejected
from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    QuotientGroup,
    Subgroup,
    abelian_invariants,
    center,
    closure,
    derived_subgroup,
    extend_hom,
    inner_automorphism,
    inverts_center,
    is_perfect,
    is_quasisimple,
    normal_subgroups,
    search_inverting_automorphism,
    search_isomorphism,
    subgroup_as_group,
    subgroup_generated,
)


class InvalidAmalgamation(ValueError):
    pass


class NotSemisimple(GroupError):
    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.witness = witness


class ComponentInL(GroupError):
    pass


class DirectProduct(FiniteGroup):
    """Direct product with mixed-radix element codes, first factor most significant.

    Code order is therefore lexicographic order on coordinate tuples.
    """

    def __init__(self, factors: Sequence[FiniteGroup], name: str = ""):
        self.factors = list(factors)
        self.sizes = np.array([F.order for F in self.factors], dtype=np.int64)
        self.strides = np.ones(len(self.factors), dtype=np.int64)
        for k in range(len(self.factors) - 2, -1, -1):
            self.strides[k] = self.strides[k + 1] * self.sizes[k + 1]
        gens = [int(g) * int(self.strides[k]) for k, F in enumerate(self.factors) for g in F.generators]
        super().__init__(int(np.prod(self.sizes)), gens, name or " x ".join(F.name for F in self.factors))

    def coordinates(self, codes):
        codes = np.asarray(codes)
        return [(codes // self.strides[k]) % self.sizes[k] for k in range(len(self.factors))]

    def encode(self, coords):
        return sum(np.asarray(c, dtype=np.int64) * self.strides[k] for k, c in enumerate(coords))

    def mul(self, a, b):
        ca, cb = self.coordinates(a), self.coordinates(b)
        return self.encode([F.mul(x, y) for F, x, y in zip(self.factors, ca, cb)])

    @cached_property
    def inverse(self) -> np.ndarray:
        return self.encode([F.inverse[c] for F, c in zip(self.factors, self.coordinates(self.elements))])


@dataclass
class Amalgamation:
    """Central identifications ``(i, z_i, j, z_j)``: element z_i of factor i is glued to z_j of factor j."""

    identifications: list = field(default_factory=list)

    @classmethod
    def full(cls, factors, pairs):
        """Identify the canonical central generators of each listed pair of factors."""
        groups = [_as_group(f) for f in factors]
        ids = []
        for i, j in pairs:
            zi, zj = canonical_central_generator(groups[i]), canonical_central_generator(groups[j])
            if groups[i].element_orders[zi] != groups[j].element_orders[zj]:
                raise InvalidAmalgamation(f"centers of factors {i} and {j} have different orders")
            ids.append((i, zi, j, zj))
        return cls(ids)


def _as_group(f) -> FiniteGroup:
    return f.group if isinstance(f, BuiltinFactor) else f


def canonical_central_generator(G: FiniteGroup) -> int:
    """Least-index central element of maximal order."""
    Z = center(G).elements
    orders = G.element_orders[Z]
    return int(Z[np.flatnonzero(orders == orders.max())[0]])


class CentralProduct(QuotientGroup):
    """Quotient of a direct product by an amalgamation subgroup of its center.

    Elements are indexed by the rank of their lexicographically least
    representative. ``embeddings[k]`` is the image of factor k.
    """

    def __init__(self, factors, amalgamation: Optional[Amalgamation] = None, name: str = ""):
        self.factor_specs = list(factors)
        groups = [_as_group(f) for f in factors]
        D = DirectProduct(groups)
        amalgamation = amalgamation or Amalgamation()
        N = _amalgamation_subgroup(D, groups, amalgamation)
        super().__init__(D, N, name=name or _product_name(groups, amalgamation))
        self.amalgamation = amalgamation
        self.generators = tuple(int(self.projection[g]) for g in D.generators)
        self.factor_generators = []
        self.embeddings = []
        self._embed = []
        for k, F in enumerate(groups):
            local = self.projection[F.elements * D.strides[k]]
            self._embed.append(local)
            mask = np.zeros(self.order, dtype=bool)
            mask[local] = True
            gens = tuple(int(local[g]) for g in F.generators)
            self.factor_generators.append(gens)
            self.embeddings.append(Subgroup(mask, gens))

    @property
    def factor_groups(self) -> list:
        return [_as_group(f) for f in self.factor_specs]

    def embed(self, k: int, x):
        """Image in G of element x of factor k."""
        return self._embed[k][x]

    def factor_descriptor(self, k: int) -> Optional[QuasisimpleDescriptor]:
        f = self.factor_specs[k]
        return f.descriptor if isinstance(f, BuiltinFactor) else None


def _product_name(groups, amalgamation) -> str:
    sep = " o " if amalgamation.identifications else " x "
    return sep.join(G.name or "?" for G in groups)


def _amalgamation_subgroup(D: DirectProduct, groups, amalgamation: Amalgamation) -> Subgroup:
    gens = []
    for i, zi, j, zj in amalgamation.identifications:
        if i == j or not (0 <= i < len(groups) and 0 <= j < len(groups)):
            raise InvalidAmalgamation(f"bad factor pair ({i}, {j})")
        for k, z in ((i, zi), (j, zj)):
            if not 0 <= z < groups[k].order or not center(groups[k]).mask[z]:
                raise InvalidAmalgamation(f"element {z} is not central in factor {k}")
        coords = [np.zeros((), dtype=np.int64) for _ in groups]
        coords[i] = np.int64(zi)
        coords[j] = groups[j].inverse[zj]
        gens.append(int(D.encode(coords)))
    N = closure(D, gens)
    # N must meet every factor trivially
    coords = np.stack(D.coordinates(N.elements))
    if np.any(np.count_nonzero(coords, axis=0) == 1):
        bad = int(N.elements[np.flatnonzero(np.count_nonzero(coords, axis=0) == 1)[0]])
        raise InvalidAmalgamation(f"amalgamation subgroup meets a factor nontrivially (element {bad})")
    return N


def central_product(factors, amalgamation: Optional[Amalgamation] = None, name: str = "") -> CentralProduct:
    return CentralProduct(factors, amalgamation, name)


# ---------------------------------------------------------------- components


def small_generating_set(G: FiniteGroup, S: Subgroup, seed: int = 0, tries: int = 2000) -> tuple:
    """A generating pair for S found by seeded random sampling, else S's own generators."""
    els = S.elements
    if els.size <= 2:
        return tuple(int(x) for x in els[1:]) or (0,)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        a, b = (int(x) for x in rng.choice(els, size=2))
        if closure(G, (a, b)).order == S.order:
            return (a, b)
    return S.generators


def components(G: FiniteGroup) -> list:
    """Quasisimple components of a semisimple group.

    One component per minimal normal subgroup of G/Z(G): the derived subgroup
    of its preimage.
    """
    if "components" in G._cache:
        return G._cache["components"]
    if not is_perfect(G):
        raise NotSemisimple("group is not perfect", derived_subgroup(G).order)
    Z = center(G)
    if Z.order == G.order:
        raise NotSemisimple("group is abelian")
    Q = QuotientGroup(G, Z)
    normals = normal_subgroups(Q)
    nontrivial = [N for N in normals if N.order > 1]
    minimal = [N for N in nontrivial if not any(M.order < N.order and M.issubset(N) for M in nontrivial)]
    comps = []
    for N in minimal:
        M = Q.preimage(N)
        C = derived_subgroup(G, M)
        if C.issubset(Z):
            raise NotSemisimple("abelian minimal normal subgroup modulo the center", N.order)
        comps.append(_with_small_generators(G, C))
    if subgroup_generated(G, [g for C in comps for g in C.generators]).order != G.order:
        raise NotSemisimple("components do not generate the group")
    for C in comps:
        if not is_quasisimple(component_group(G, C)):
            raise NotSemisimple("component is not quasisimple", C.order)
    comps.sort(key=Subgroup.sort_key)
    G._cache["components"] = comps
    return comps


def _with_small_generators(G: FiniteGroup, C: Subgroup) -> Subgroup:
    for E in getattr(G, "embeddings", []):
        if E == C:
            return E
    return Subgroup(C.mask, small_generating_set(G, C))


def component_descriptor(G: FiniteGroup, C: Subgroup) -> Optional[QuasisimpleDescriptor]:
    for k, E in enumerate(getattr(G, "embeddings", [])):
        if E == C:
            return G.factor_descriptor(k)
    return None


def component_group(G: FiniteGroup, C: Subgroup) -> FiniteGroup:
    key = ("component_group", C.key)
    if key not in G._cache:
        G._cache[key] = subgroup_as_group(G, C, name=f"component of order {C.order}")
    return G._cache[key]


# ---------------------------------------------------------------- automorphisms


def _lift(G: FiniteGroup, comps: list, local_maps: dict) -> Homomorphism:
    """Automorphism of G assembled from maps on components.

    ``local_maps[i] = (j, psi)`` sends component i to component j through the
    local isomorphism psi; unlisted components are fixed. The result is
    verified on the Cayley graph for the union of component generators.
    """
    gens, imgs = [], []
    for i, C in enumerate(comps):
        for g in C.generators:
            gens.append(int(g))
            if i in local_maps:
                j, psi = local_maps[i]
                Ci, Cj = component_group(G, C), component_group(G, comps[j])
                local = int(np.flatnonzero(Ci.embedding == g)[0])
                imgs.append(int(Cj.embedding[psi.image[local]]))
            else:
                imgs.append(int(g))
    return extend_hom(G, G, imgs, generators=gens)


def factor_certificates(G: FiniteGroup) -> list:
    """Certificates shipped with builtin factors, lifted to automorphisms of G."""
    out = []
    if not isinstance(G, CentralProduct):
        return out
    for k, f in enumerate(G.factor_specs):
        if not isinstance(f, BuiltinFactor):
            continue
        for cert in f.certificates.values():
            imgs = list(G.generators)
            pos = 0
            for kk, gens in enumerate(G.factor_generators):
                for local_g, g in zip(G.factor_groups[kk].generators, gens):
                    if kk == k:
                        imgs[pos] = int(G.embed(k, cert.image[local_g]))
                    pos += 1
            try:
                out.append(extend_hom(G, G, imgs))
            except GroupError as exc:
                raise CertificateRejected(str(exc)) from exc
    return out


def swap_automorphisms(G: FiniteGroup, comps: Optional[list] = None, budget: int = 10**5) -> list:
    """Automorphisms exchanging pairs of isomorphic components.

    Candidates come from isomorphism search between the component groups; a
    candidate is accepted only if the exchange extends to G, which is where
    amalgamated central identifications are respected.
    """
    comps = components(G) if comps is None else comps
    out = []
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if comps[i].order != comps[j].order:
                continue
            Ci, Cj = component_group(G, comps[i]), component_group(G, comps[j])
            found = []

            def lifts(psi, i=i, j=j, Ci=Ci, Cj=Cj):
                back = Homomorphism(Cj, Ci, np.argsort(psi.image), (), ())
                try:
                    found.append(_lift(G, comps, {i: (j, psi), j: (i, back)}))
                except GroupError:
                    return False
                return True

            if search_isomorphism(Ci, Cj, constraint=lifts, budget=budget) is not None:
                out.append(found[-1])
    return out


def automorphism_generators(G: FiniteGroup, budget: int = 10**5) -> list:
    """Inner generators, lifted factor certificates and component swaps."""
    auts = [inner_automorphism(G, g) for g in G.generators]
    auts += factor_certificates(G)
    auts += swap_automorphisms(G, budget=budget)
    return auts


# ---------------------------------------------------------------- decomposition


@dataclass(eq=False)
class CentralDecomposition:
    """The factors A_1..A_n: products of the components in each Aut-orbit.

    Factor labels are 1-based; subsets J of ``{1..n}`` index the regular
    subgroups built downstream.
    """

    group: FiniteGroup
    components: list
    orbits: list
    factors: list
    descriptors: list
    intersections: dict

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def labels(self) -> tuple:
        return tuple(range(1, self.n + 1))

    def component_descriptors(self, r: int) -> list:
        return [self.descriptors[c] for c in self.orbits[r - 1]]

    @property
    def l_indices(self) -> frozenset:
        return frozenset(r for r in self.labels
                         if any(d is not None and in_L(d) for d in self.component_descriptors(r)))

    @property
    def l(self) -> int:
        return len(self.l_indices)

    def intersection_invariants(self, r: int, s: int) -> tuple:
        key = (min(r, s), max(r, s))
        return abelian_invariants(self.group, self.intersections[key])

    def A(self, J) -> Subgroup:
        """The product of the factors labelled by J."""
        J = frozenset(J)
        cache = self.__dict__.setdefault("_A", {})
        if J not in cache:
            gens = [g for r in sorted(J) for g in self.factors[r - 1].generators]
            cache[J] = subgroup_generated(self.group, gens)
        return cache[J]

    def complement(self, J) -> frozenset:
        return frozenset(self.labels) - frozenset(J)

    @cached_property
    def center_generators(self) -> tuple:
        return center(self.group).generators


def aut_indecomposable_decomposition(G: FiniteGroup, aut_generators: Sequence[Homomorphism],
                                     comps: Optional[list] = None) -> CentralDecomposition:
    """Group components into orbits of the supplied automorphisms.

    Any Aut-invariant perfect central factor of a semisimple group is a product
    of components, so the orbits of Aut(G) on components give the finest
    Aut-invariant central decomposition. The supplied generators must include
    every component exchange (see ``automorphism_generators``).
    """
    comps = list(components(G) if comps is None else comps)
    index = {C.key: i for i, C in enumerate(comps)}
    parent = list(range(len(comps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for alpha in aut_generators:
        for i, C in enumerate(comps):
            mask = np.zeros(G.order, dtype=bool)
            mask[alpha.image[C.elements]] = True
            j = index.get(Subgroup(mask).key)
            if j is None:
                raise GroupError("automorphism does not permute the components")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups = {}
    for i in range(len(comps)):
        groups.setdefault(find(i), []).append(i)
    raw = []
    for members in groups.values():
        gens = [g for i in members for g in comps[i].generators]
        raw.append((subgroup_generated(G, gens), members))
    raw.sort(key=lambda item: item[0].sort_key())
    factors = [A for A, _ in raw]
    orbits = [sorted(m, key=lambda i: comps[i].sort_key()) for _, m in raw]
    _check_decomposition(G, factors, aut_generators)
    intersections = {(r + 1, s + 1): factors[r] & factors[s]
                     for r in range(len(factors)) for s in range(r + 1, len(factors))}
    descriptors = [component_descriptor(G, C) for C in comps]
    return CentralDecomposition(G, comps, orbits, factors, descriptors, intersections)


def _check_decomposition(G, factors, auts):
    for A in factors:
        if not is_perfect(G, A):
            raise GroupError("decomposition factor is not perfect")
        for alpha in auts:
            if not A.mask[alpha.image[A.elements]].all():
                raise GroupError("decomposition factor is not invariant")
    for r, A in enumerate(factors):
        for B in factors[r + 1:]:
            for a in A.generators:
                for b in B.generators:
                    if G.mul(a, b) != G.mul(b, a):
                        raise GroupError("decomposition factors do not commute")
    allgens = [g for A in factors for g in A.generators]
    if subgroup_generated(G, allgens).order != G.order:
        raise GroupError("decomposition factors do not generate the group")


def decompose(G: FiniteGroup, budget: int = 10**5) -> tuple:
    """Automorphism generators and the decomposition they induce."""
    auts = automorphism_generators(G, budget=budget)
    return auts, aut_indecomposable_decomposition(G, auts)


# ---------------------------------------------------------------- inverting automorphism


def inverting_automorphism(G, per_component_certificates: Optional[dict] = None) -> Homomorphism:
    """An automorphism of G inverting Z(G), assembled componentwise.

    ``per_component_certificates`` maps component positions (in
    ``components(G)``) to automorphisms of the component groups inverting
    their centers; missing entries are found by search. Raises
    ``ComponentInL`` when some component is in the exceptional list.
    """
    if isinstance(G, DescriptorDecomposition):
        if G.l:
            raise ComponentInL("a component lies in the exceptional list")
        raise GroupError("descriptor-only instances cannot be realized")
    comps = components(G)
    for C in comps:
        d = component_descriptor(G, C)
        if d is not None and in_L(d):
            raise ComponentInL(f"component {d.simple} with center {d.center}")
    certs = dict(per_component_certificates or {})
    maps = {}
    for i, C in enumerate(comps):
        K = component_group(G, C)
        alpha = certs.get(i)
        if alpha is None:
            alpha = search_inverting_automorphism(K)
            if alpha is None:
                raise GroupError(f"no inverting automorphism for component {i}")
        if not inverts_center(alpha):
            raise CertificateRejected(f"certificate for component {i} does not invert its center")
        maps[i] = (i, alpha)
    try:
        alpha = _lift(G, comps, maps)
    except GroupError as exc:
        raise CertificateRejected(str(exc)) from exc
    if not inverts_center(alpha):
        raise CertificateRejected("assembled automorphism does not invert the center")
    return alpha
