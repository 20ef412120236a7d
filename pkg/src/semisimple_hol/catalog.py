"""Quasisimple groups whose center cannot be inverted by an automorphism.

The exceptional list is shipped as data (``data/l_rules.json``); this module
answers membership, containment of critical central subgroups, and the
counting bounds for the number of regular subgroups sharing the holomorph.
Abelian groups are handled throughout by their invariants, a multiset of
prime-power cyclic orders.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional


class UnknownName(KeyError):
    pass


class InvalidCounts(ValueError):
    pass


@lru_cache(maxsize=None)
def load_rules() -> dict:
    text = resources.files(__package__).joinpath("data/l_rules.json").read_text(encoding="utf-8")
    return json.loads(text)


# ---------------------------------------------------------------- abelian groups


def _factor(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def normalize_invariants(orders) -> tuple:
    """Split cyclic orders into prime powers: ``(12, 2)`` -> ``(2, 3, 4)``."""
    result = []
    for n in orders:
        n = int(n)
        if n < 1:
            raise ValueError(f"bad cyclic order {n}")
        counts = {}
        for p in _factor(n):
            counts[p] = counts.get(p, 0) + 1
        result.extend(p**e for p, e in counts.items())
    return tuple(sorted(result))


def _partitions(invariants) -> dict:
    """prime -> exponents in decreasing order."""
    parts = {}
    for q in normalize_invariants(invariants):
        p = _factor(q)[0]
        parts.setdefault(p, []).append(len(_factor(q)))
    return {p: sorted(e, reverse=True) for p, e in parts.items()}


def embeds(small, big) -> bool:
    """Whether the abelian group ``small`` is isomorphic to a subgroup of ``big``."""
    ps, pb = _partitions(small), _partitions(big)
    for p, es in ps.items():
        eb = pb.get(p, [])
        if len(es) > len(eb) or any(a > b for a, b in zip(es, eb)):
            return False
    return True


def subgroup_types_between(lower, upper) -> list:
    """Isomorphism types C with ``lower`` embedded in C embedded in ``upper``."""
    pl, pu = _partitions(lower), _partitions(upper)
    if not embeds(lower, upper):
        return []
    per_prime = []
    for p, eu in sorted(pu.items()):
        el = pl.get(p, []) + [0] * (len(eu) - len(pl.get(p, [])))
        options = []
        for lam in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(el, eu)]):
            if all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)):
                options.append(tuple(p**e for e in lam if e))
        per_prime.append(options)
    return [tuple(sorted(sum(combo, ()))) for combo in itertools.product(*per_prime)]


# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class QuasisimpleDescriptor:
    """A quasisimple group named by its simple quotient and the invariants of its center.

    ``variant`` separates non-isomorphic covers with the same center; it never
    affects membership in the exceptional list.
    """

    simple: str
    center: tuple = ()
    variant: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "center", normalize_invariants(self.center))
        table = load_rules()["simple_groups"]
        if self.simple not in table:
            raise UnknownName(self.simple)
        if not embeds(self.center, table[self.simple]):
            raise ValueError(f"center {self.center} is not a quotient of the Schur multiplier of {self.simple}")

    @property
    def in_L(self) -> bool:
        return in_L(self)


def _rule(simple: str) -> Optional[dict]:
    for rule in load_rules()["rules"]:
        if rule["simple"] == simple:
            return rule
    return None


def critical_shape(simple: str) -> Optional[tuple]:
    """Invariants of the critical central subgroup, or None outside the list."""
    rule = _rule(simple)
    if rule is None:
        return None
    if rule["critical"] == "universal":
        return normalize_invariants(load_rules()["simple_groups"][simple])
    return normalize_invariants(rule["critical"])


def in_L(d: QuasisimpleDescriptor) -> bool:
    """True iff the center of d contains the critical shape for its simple quotient."""
    if d.simple not in load_rules()["simple_groups"]:
        raise UnknownName(d.simple)
    shape = critical_shape(d.simple)
    return shape is not None and embeds(shape, d.center)


def l_critical_check(intersection_invariants, component: QuasisimpleDescriptor) -> bool:
    """Whether a central subgroup with these invariants contains a critical subgroup of ``component``."""
    if component.simple not in load_rules()["simple_groups"]:
        raise UnknownName(component.simple)
    if not in_L(component):
        return False
    return embeds(critical_shape(component.simple), intersection_invariants)


def list_L() -> list:
    """One descriptor per isomorphism type in the exceptional list."""
    rules = load_rules()
    out = []
    for rule in rules["rules"]:
        simple = rule["simple"]
        variants = {normalize_invariants(v["center"]): v["count"] for v in rule["cover_variants"]}
        for center in subgroup_types_between(critical_shape(simple), rules["simple_groups"][simple]):
            count = variants.get(center, 1)
            for k in range(count):
                out.append(QuasisimpleDescriptor(simple, center, None if count == 1 else f"v{k + 1}"))
    return out


def count_L_up_to_iso() -> int:
    return len(list_L())


def h_bounds(n: int, l: int) -> tuple:
    """``(m, n)`` with ``m = min(n - l + 1, n)``; the exponent h satisfies m <= h <= n."""
    if n < 1 or not 0 <= l <= n:
        raise InvalidCounts(f"need n >= 1 and 0 <= l <= n, got n={n}, l={l}")
    return min(n - l + 1, n), n


def count_bounds(n: int, l: int) -> tuple:
    m, n = h_bounds(n, l)
    return 2**m, 2**n


def amalgamated_count(n: int, l: int) -> int:
    """Number of regular subgroups sharing the holomorph when all factor centers are amalgamated."""
    return 2 ** h_bounds(n, l)[0]


@dataclass
class DescriptorDecomposition:
    """A central decomposition known only through descriptors.

    ``factors[i]`` lists the component descriptors of the (i+1)-th factor;
    ``intersections`` maps 1-based pairs ``(r, s)`` to the invariants of the
    intersection of the two factors.
    """

    factors: list
    intersections: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def l_indices(self) -> frozenset:
        return frozenset(i + 1 for i, comps in enumerate(self.factors) if any(in_L(c) for c in comps))

    @property
    def l(self) -> int:
        return len(self.l_indices)

    def component_descriptors(self, r: int) -> list:
        return list(self.factors[r - 1])

    def intersection_invariants(self, r: int, s: int) -> tuple:
        key = (r, s) if (r, s) in self.intersections else (s, r)
        return normalize_invariants(self.intersections.get(key, ()))

    @classmethod
    def amalgamated(cls, factors, center_invariants):
        """All factor centers identified with one common center."""
        n = len(factors)
        pairs = {(r, s): tuple(center_invariants) for r in range(1, n + 1) for s in range(r + 1, n + 1)}
        return cls(list(factors), pairs)
