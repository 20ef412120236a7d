"""End-to-end pipeline: build, decompose, certify the family G_J, and report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .catalog import h_bounds
from .central_product import CentralDecomposition, aut_indecomposable_decomposition, automorphism_generators, \
    inverting_automorphism
from .groups import FiniteGroup, abelian_invariants, center, inverts_center
from .holomorph import (
    CircGroup,
    OppositeGroup,
    brute_force_J_oracle,
    build_GJ,
    compute_H_set,
    fmt_subset,
    gj_membership,
    hol_membership,
    holomorph_group,
    inversion_perm,
    is_isomorphism_table,
    lam,
    phi_J,
    rho,
    same_operation,
    subsets,
    t_group,
)
from .permgroup import compose, conjugate_perm

STAGES = ("build", "decompose", "holomorph", "hset", "tgroup", "report")


@dataclass
class Check:
    passed: bool
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        return {"passed": self.passed, "witness": self.witness}


@dataclass
class Analysis:
    group: FiniteGroup
    stage: str
    timings: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    automorphisms: list = field(default_factory=list)
    decomposition: Optional[CentralDecomposition] = None
    inverting: object = None
    hol: object = None
    gj: dict = field(default_factory=dict)
    phis: dict = field(default_factory=dict)
    H: Optional[list] = None
    h: Optional[int] = None
    tgroup: object = None
    oracle: Optional[list] = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def check(self, name: str, passed: bool, witness=None):
        self.checks[name] = Check(bool(passed), None if passed else witness)


def _timed(analysis: Analysis, name: str, fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    analysis.timings[name] = time.perf_counter() - start
    return out


def analyze(G: FiniteGroup, stage: str = "report", oracle: bool = False, guard: int = 20_000) -> Analysis:
    """Run the pipeline on G up to ``stage`` (one of ``STAGES``)."""
    level = STAGES.index(stage)
    a = Analysis(G, stage)
    a.check("group_axioms", _axioms_ok(G))
    if level >= 1 or oracle:
        _decompose(a)
    if level >= 2 or oracle:
        _holomorph(a)
    if level >= 3:
        _hset(a)
    if level >= 4:
        _tgroup(a)
    if oracle:
        _oracle(a, guard)
    return a


def _axioms_ok(G) -> bool:
    try:
        G.check_axioms()
    except Exception:
        return False
    return True


def _decompose(a: Analysis):
    G = a.group
    auts = _timed(a, "automorphisms", automorphism_generators, G)
    dec = _timed(a, "decompose", aut_indecomposable_decomposition, G, auts)
    alpha = _timed(a, "inverting", inverting_automorphism, G)
    a.automorphisms = auts + [alpha]
    a.decomposition = dec
    a.inverting = alpha
    a.check("inverting_automorphism_inverts_center", inverts_center(alpha))


def _holomorph(a: Analysis):
    G, dec = a.group, a.decomposition
    start = time.perf_counter()
    hol = holomorph_group(G, a.automorphisms)
    a.hol = hol
    inv = inversion_perm(G)

    ok = all(np.array_equal(compose(r, l), compose(l, r)) for r in hol.rho_gens for l in hol.lambda_gens)
    a.check("rho_lambda_commute", ok)

    bad = [g for g in G.generators
           if not (np.array_equal(conjugate_perm(rho(G, g), inv), lam(G, G.inverse[g]))
                   and np.array_equal(conjugate_perm(lam(G, g), inv), rho(G, G.inverse[g])))]
    a.check("inversion_swaps_rho_lambda", not bad, f"generator {bad[:1]}")

    for J in subsets(dec.labels):
        a.gj[J] = build_GJ(J, dec, hol)
    a.check("gj_regular_and_normalized", True)

    bad = [fmt_subset(J) for J, sub in a.gj.items() if not all(hol_membership(s, G) for s in sub.generators)]
    a.check("gj_in_holomorph", not bad, f"J={bad[:1]}")

    bad = [fmt_subset(J) for J, sub in a.gj.items()
           if not all(gj_membership(conjugate_perm(s, inv), dec.complement(J), dec) for s in sub.generators)]
    a.check("inversion_conjugates_gj_to_complement", not bad, f"J={bad[:1]}")

    bad = []
    for J, sub in a.gj.items():
        for K in a.gj:
            if J != K and all(gj_membership(s, K, dec) for s in sub.generators):
                bad.append((fmt_subset(J), fmt_subset(K)))
    a.check("gj_pairwise_distinct", not bad, f"pair {bad[:1]}")
    a.timings["holomorph"] = time.perf_counter() - start


def _hset(a: Analysis):
    G, dec, hol, alpha = a.group, a.decomposition, a.hol, a.inverting
    start = time.perf_counter()
    a.H, a.h = compute_H_set(dec)
    m, n = h_bounds(dec.n, dec.l)
    a.check("h_within_bounds", m <= a.h <= n, f"h={a.h}, bounds=({m}, {n})")
    I = frozenset(dec.labels)
    from .holomorph import factorization

    claim1, claim2, claim3 = [], [], []
    for J in a.H:
        phi = phi_J(J, alpha, dec)
        a.phis[J] = phi
        xJ, xJc = factorization(dec, J)
        for g in G.generators:
            conj = conjugate_perm(rho(G, g), phi)
            target = compose(rho(G, xJ[g]), lam(G, G.inverse[alpha.image[xJc[g]]]))
            if not (gj_membership(conj, J, dec) and np.array_equal(conj, target)):
                claim1.append(fmt_subset(J))
                break
        if not all(hol_membership(conjugate_perm(h, phi), G) for h in hol.generators):
            claim2.append(fmt_subset(J))
        elif J != I and hol_membership(phi, G) is not None:
            claim2.append(fmt_subset(J))
        if hol_membership(compose(phi, phi), G) is None:
            claim3.append(fmt_subset(J))
    a.check("phi_conjugates_rho_to_gj", not claim1, f"J={claim1[:1]}")
    a.check("phi_normalizes_holomorph", not claim2, f"J={claim2[:1]}")
    a.check("phi_square_in_holomorph", not claim3, f"J={claim3[:1]}")

    circ_I = CircGroup(dec, I)
    a.check("circ_full_is_product", same_operation(G, circ_I))
    a.check("circ_empty_is_opposite", same_operation(OppositeGroup(G), CircGroup(dec, frozenset())))
    bad_iso, bad_aut = [], []
    for J in a.H:
        circ_J = CircGroup(dec, J)
        if not is_isomorphism_table(circ_I, circ_J, a.phis[J]):
            bad_iso.append(fmt_subset(J))
        if not all(is_isomorphism_table(circ_J, circ_J, np.asarray(al.image)) for al in a.automorphisms):
            bad_aut.append(fmt_subset(J))
    a.check("phi_is_circ_isomorphism", not bad_iso, f"J={bad_iso[:1]}")
    a.check("automorphisms_preserve_circ", not bad_aut, f"J={bad_aut[:1]}")
    a.timings["hset"] = time.perf_counter() - start


def _tgroup(a: Analysis):
    G = a.group
    conjugators = {f"phi_{''.join(map(str, fmt_subset(J))) or 'empty'}": a.phis[J] for J in a.H}
    conjugators["inv"] = inversion_perm(G)
    t = _timed(a, "tgroup", t_group, a.decomposition, conjugators, a.H, dict(a.gj))
    a.tgroup = t
    a.check("t_group_regular", t.regular)
    a.check("t_group_elementary_abelian", t.elementary_abelian)
    a.check("t_group_order_matches_h", t.order == 2 ** a.h, f"|T|={t.order}")
    a.check("conjugator_squares_fix_family", t.squares_trivial)


def _oracle(a: Analysis, guard: int):
    found = _timed(a, "oracle", brute_force_J_oracle, a.group, a.hol, guard, a.decomposition)
    a.oracle = found
    labels = sorted(fmt_subset(J) for _, J in found if J is not None)
    expected = sorted(fmt_subset(J) for J in subsets(a.decomposition.labels))
    a.check("oracle_matches_family", labels == expected and len(found) == 2 ** a.decomposition.n,
            f"oracle found {len(found)}")


# ---------------------------------------------------------------- report


def report_dict(a: Analysis) -> dict:
    """Machine-readable report; contains no timings so that runs are reproducible byte for byte."""
    G = a.group
    Z = center(G)
    out = {
        "schema": 1,
        "stage": a.stage,
        "group": {
            "name": G.name,
            "order": G.order,
            "factor_orders": [F.order for F in getattr(G, "factor_groups", [G])],
            "center_order": Z.order,
            "center_invariants": list(abelian_invariants(G, Z)),
        },
    }
    dec = a.decomposition
    if dec is not None:
        m, n = h_bounds(dec.n, dec.l)
        out["decomposition"] = {
            "n": dec.n,
            "l": dec.l,
            "m": m,
            "component_count": len(dec.components),
            "component_orders": [C.order for C in dec.components],
            "factor_orders": [A.order for A in dec.factors],
            "automorphism_generators": len(a.automorphisms),
        }
    if a.hol is not None:
        out["holomorph"] = {
            "generators": len(a.hol.generators),
            "order": a.hol.order,
            "family": [fmt_subset(J) for J in a.gj],
        }
    if a.H is not None:
        out["H"] = {
            "h": a.h,
            "size": len(a.H),
            "subsets": [fmt_subset(J) for J in a.H],
        }
    if a.tgroup is not None:
        t = a.tgroup
        out["T"] = {
            "order": t.order,
            "abelian_invariants": t.abelian_invariants,
            "regular": t.regular,
            "action": {name: list(p) for name, p in t.action.items()},
        }
    if a.oracle is not None:
        out["oracle"] = {
            "count": len(a.oracle),
            "matches": [fmt_subset(J) if J is not None else None for _, J in a.oracle],
        }
    out["checks"] = {name: c.as_dict() for name, c in a.checks.items()}
    out["ok"] = a.ok
    return out


def summary_text(a: Analysis) -> str:
    rep = report_dict(a)
    lines = [f"group      {rep['group']['name']}  order {rep['group']['order']}"]
    if "decomposition" in rep:
        d = rep["decomposition"]
        lines.append(f"decomp     n={d['n']}  l={d['l']}  m={d['m']}  components={d['component_orders']}")
    if "H" in rep:
        lines.append(f"H(G)       h={rep['H']['h']}  |H|={rep['H']['size']}  {rep['H']['subsets']}")
    if "T" in rep:
        lines.append(f"T(G)       order {rep['T']['order']}  invariants {rep['T']['abelian_invariants']}")
    if "oracle" in rep:
        lines.append(f"oracle     {rep['oracle']['count']} regular normal subgroups: {rep['oracle']['matches']}")
    lines.append("")
    width = max((len(n) for n in a.checks), default=10)
    for name, c in a.checks.items():
        lines.append(f"{name:<{width}}  {'pass' if c.passed else 'FAIL'}" + (f"  ({c.witness})" if c.witness else ""))
    lines.append("")
    for name, t in a.timings.items():
        lines.append(f"time {name:<14} {t:8.2f}s")
    return "\n".join(lines) + "\n"
