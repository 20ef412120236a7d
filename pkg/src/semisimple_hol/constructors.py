"""The builtin quasisimple factors, realized as matrix groups."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .catalog import QuasisimpleDescriptor
from .fields import FiniteField
from .groups import (
    GroupError,
    Homomorphism,
    abelian_invariants,
    center,
    extend_hom,
    is_quasisimple,
)
from .matrices import MatrixGroup, transvection


class UnsupportedParameters(ValueError):
    pass


class UnsupportedName(KeyError):
    pass


class CertificateRejected(GroupError):
    pass


class BuildGateError(GroupError):
    """Shipped generator data does not produce the declared group."""


SUPPORTED_SL = {(2, 5), (2, 7), (3, 4)}

# 3.A6 inside SL(3,4): the stabilizer of the hyperoval
# {(1:t:t^2) : t in F4} + {(0:0:1), (0:1:0)}, acting on row vectors.
# F4 digits: 0, 1, 2 = w, 3 = w + 1 = w^2.
THREE_A6_GENERATORS = [
    [[2, 2, 2], [0, 1, 0], [2, 3, 1]],
    [[0, 1, 0], [1, 3, 2], [0, 0, 1]],
]


def special_linear(dim: int, q: int) -> MatrixGroup:
    """SL(dim, q), enumerated as the closure of elementary transvections."""
    if (dim, q) not in SUPPORTED_SL:
        raise UnsupportedParameters(f"SL({dim},{q}) is not supported")
    F = FiniteField(q)
    # entries 1 suffice over a prime field; F4 also needs the primitive element
    scalars = (1,) if q in (5, 7) else (1, F.primitive)
    pairs = [(0, 1), (1, 0)] if dim == 2 else [(i, j) for i in range(dim) for j in range(dim) if i != j]
    gens = [transvection(dim, i, j, t) for i, j in pairs for t in scalars]
    return MatrixGroup(F, gens, name=f"SL({dim},{q})")


@dataclass
class BuiltinFactor:
    name: str
    group: MatrixGroup
    center_invariants: tuple
    descriptor: QuasisimpleDescriptor
    certificates: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.group.order


_DECLARED = {
    "SL2_5": dict(order=120, center=(2,), descriptor=("A5", (2,))),
    "SL2_7": dict(order=336, center=(2,), descriptor=("PSL2_7", (2,))),
    "THREE_A6": dict(order=1080, center=(3,), descriptor=("A6", (3,))),
}

_BUILT: dict = {}


def builtin_names() -> list:
    return list(_DECLARED)


def builtin(name: str) -> BuiltinFactor:
    """Realize a builtin factor and check it against its declared order and center.

    Results are cached; groups are immutable after construction.
    """
    if name not in _DECLARED:
        raise UnsupportedName(name)
    if name in _BUILT:
        return _BUILT[name]
    decl = _DECLARED[name]
    if name == "SL2_5":
        G = special_linear(2, 5)
    elif name == "SL2_7":
        G = special_linear(2, 7)
    else:
        G = MatrixGroup(FiniteField(4), THREE_A6_GENERATORS, name="3.A6")
    G.name = name
    if G.order != decl["order"]:
        raise BuildGateError(f"{name}: closure has order {G.order}, expected {decl['order']}")
    inv = abelian_invariants(G, center(G))
    if inv != decl["center"]:
        raise BuildGateError(f"{name}: center invariants {inv}, expected {decl['center']}")
    if not is_quasisimple(G):
        raise BuildGateError(f"{name}: not quasisimple")
    simple, zinv = decl["descriptor"]
    factor = BuiltinFactor(name, G, inv, QuasisimpleDescriptor(simple, zinv))
    if name in ("SL2_5", "SL2_7"):
        factor.certificates["diagonal"] = diagonal_automorphism_certificate(factor)
    _BUILT[name] = factor
    return factor


def diagonal_automorphism_certificate(factor) -> Homomorphism:
    """Conjugation by ``diag(nu, 1)`` with ``nu`` a non-square, as a verified automorphism."""
    G = factor.group if isinstance(factor, BuiltinFactor) else factor
    name = factor.name if isinstance(factor, BuiltinFactor) else G.name
    if not isinstance(G, MatrixGroup) or G.dim != 2 or G.field.q not in (5, 7):
        raise UnsupportedName(name)
    F = G.field
    nu = next(a for a in range(1, F.q) if not F.is_square(a))
    D = np.diag([nu, 1])
    Dinv = np.diag([int(F.inv[nu]), 1])
    gens = G.matrices[list(G.generators)]
    images = F.matmul(F.matmul(Dinv, gens), D)
    try:
        return extend_hom(G, G, G.index_of(images))
    except GroupError as exc:
        raise CertificateRejected(str(exc)) from exc


def field_automorphism(G: MatrixGroup) -> Homomorphism:
    """Entrywise Frobenius ``a -> a^p``, when it preserves the group."""
    F = G.field
    frob = np.array([F.mul[a, a] if F.char == 2 else a for a in range(F.q)])
    images = frob[G.matrices[list(G.generators)]]
    try:
        return extend_hom(G, G, G.index_of(images))
    except GroupError as exc:
        raise CertificateRejected(str(exc)) from exc
