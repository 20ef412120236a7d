"""Group spec files: a line-oriented key = value format with three section kinds.

::

    # SL(2,5) o SL(2,7), centers identified
    [factor]
    builtin = SL2_5

    [factor]
    special_linear = 2 7

    [amalgamate]
    factors = 1 2        # 1-based factor indices
    elements = z z       # per side: "z", "z^k" (a power of the canonical central
                         # generator) or "@i" (element index i of that factor)

    [analysis]
    oracle = false
    guard = 20000

An ``[amalgamate]`` section may say ``mode = full`` instead of ``elements``,
which identifies the two canonical central generators (same order required).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import QuasisimpleDescriptor
from .central_product import Amalgamation, CentralProduct, canonical_central_generator, central_product
from .constructors import BuiltinFactor, builtin, builtin_names, diagonal_automorphism_certificate, special_linear
from .groups import abelian_invariants, center


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_SL_DESCRIPTORS = {(2, 5): ("A5", (2,)), (2, 7): ("PSL2_7", (2,)), (3, 4): ("PSL3_4", (3,))}
_SELECTOR = re.compile(r"^(?:z(?:\^(-?\d+))?|@(\d+))$")


@dataclass
class GroupSpec:
    factors: list = field(default_factory=list)        # ("builtin", name) or ("special_linear", d, q)
    amalgamations: list = field(default_factory=list)  # (i, sel_i, j, sel_j), 0-based factor indices
    analysis: dict = field(default_factory=dict)

    @property
    def oracle(self) -> bool:
        return bool(self.analysis.get("oracle", False))

    @property
    def guard(self) -> int:
        return int(self.analysis.get("guard", 20_000))

    def build(self) -> CentralProduct:
        facs = [_factor(entry) for entry in self.factors]
        amalg = None
        if self.amalgamations:
            ids = []
            for i, si, j, sj in self.amalgamations:
                ids.append((i, _select(facs[i].group, si), j, _select(facs[j].group, sj)))
            amalg = Amalgamation(ids)
        return central_product(facs, amalg)


def _select(G, selector) -> int:
    kind, k = selector
    if kind == "index":
        return k
    z = canonical_central_generator(G)
    return int(G.power(z, k % int(G.element_orders[z])))


def _factor(entry) -> BuiltinFactor:
    if entry[0] == "builtin":
        return builtin(entry[1])
    _, d, q = entry
    G = special_linear(d, q)
    simple, zinv = _SL_DESCRIPTORS[(d, q)]
    f = BuiltinFactor(G.name, G, abelian_invariants(G, center(G)), QuasisimpleDescriptor(simple, zinv))
    if d == 2:
        f.certificates["diagonal"] = diagonal_automorphism_certificate(f)
    return f


def _ints(value: str, count: int, lineno: int) -> list:
    parts = value.split()
    if len(parts) != count or not all(p.lstrip("-").isdigit() for p in parts):
        raise SpecError(f"expected {count} integers, got {value!r}", lineno)
    return [int(p) for p in parts]


def _selector(sel: str, lineno: int) -> tuple:
    m = _SELECTOR.match(sel)
    if not m:
        raise SpecError(f"bad central-element selector {sel!r}", lineno)
    if m.group(2) is not None:
        return ("index", int(m.group(2)))
    return ("power", int(m.group(1)) if m.group(1) else 1)


def _bool(value: str, lineno: int) -> bool:
    if value.lower() in ("true", "yes", "1"):
        return True
    if value.lower() in ("false", "no", "0"):
        return False
    raise SpecError(f"expected a boolean, got {value!r}", lineno)


def parse_spec(text: str) -> GroupSpec:
    sections = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            name = line.strip("[]").strip()
            if not line.endswith("]") or name not in ("factor", "amalgamate", "analysis"):
                raise SpecError(f"unknown section {line!r}", lineno)
            sections.append((name, lineno, {}))
            continue
        if not sections:
            raise SpecError("key outside any section", lineno)
        if "=" not in line:
            raise SpecError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        entries = sections[-1][2]
        if key in entries:
            raise SpecError(f"duplicate key {key!r}", lineno)
        entries[key] = (value, lineno)

    spec = GroupSpec()
    for kind, lineno, entries in sections:
        if kind == "factor":
            spec.factors.append(_parse_factor(entries, lineno))
        elif kind == "analysis":
            for key, (value, ln) in entries.items():
                if key == "oracle":
                    spec.analysis["oracle"] = _bool(value, ln)
                elif key == "guard":
                    spec.analysis["guard"] = _ints(value, 1, ln)[0]
                else:
                    raise SpecError(f"unknown analysis key {key!r}", ln)
    if not spec.factors:
        raise SpecError("no [factor] sections")
    for kind, lineno, entries in sections:
        if kind == "amalgamate":
            spec.amalgamations.append(_parse_amalgamation(entries, lineno, len(spec.factors)))
    return spec


def _parse_factor(entries: dict, lineno: int):
    if set(entries) == {"builtin"}:
        name, ln = entries["builtin"]
        if name not in builtin_names():
            raise SpecError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}", ln)
        return ("builtin", name)
    if set(entries) == {"special_linear"}:
        value, ln = entries["special_linear"]
        d, q = _ints(value, 2, ln)
        if (d, q) not in _SL_DESCRIPTORS:
            raise SpecError(f"special_linear {d} {q} is not supported", ln)
        return ("special_linear", d, q)
    raise SpecError("a [factor] needs exactly one of 'builtin' or 'special_linear'", lineno)


def _parse_amalgamation(entries: dict, lineno: int, nfactors: int):
    if "factors" not in entries:
        raise SpecError("[amalgamate] needs 'factors'", lineno)
    value, ln = entries["factors"]
    i, j = _ints(value, 2, ln)
    if not (1 <= i <= nfactors and 1 <= j <= nfactors) or i == j:
        raise SpecError(f"bad factor indices {i} {j}", ln)
    extra = set(entries) - {"factors", "elements", "mode"}
    if extra:
        raise SpecError(f"unknown amalgamate keys {sorted(extra)}", lineno)
    if "mode" in entries:
        mode, mln = entries["mode"]
        if mode != "full" or "elements" in entries:
            raise SpecError("'mode' must be 'full' and excludes 'elements'", mln)
        return (i - 1, ("power", 1), j - 1, ("power", 1))
    if "elements" not in entries:
        raise SpecError("[amalgamate] needs 'elements' or 'mode = full'", lineno)
    value, eln = entries["elements"]
    parts = value.split()
    if len(parts) != 2:
        raise SpecError("'elements' takes two selectors", eln)
    return (i - 1, _selector(parts[0], eln), j - 1, _selector(parts[1], eln))


def load_spec(path) -> GroupSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))
