"""Acceptance suite. Each test prints one PASS/FAIL line; all comparisons are exact."""

import time
from pathlib import Path

import numpy as np
import pytest

from semisimple_hol.analysis import analyze, report_dict
from semisimple_hol.catalog import QuasisimpleDescriptor as D
from semisimple_hol.catalog import amalgamated_count, count_L_up_to_iso, h_bounds, in_L, load_rules
from semisimple_hol.central_product import inverting_automorphism
from semisimple_hol.cli import run
from semisimple_hol.constructors import builtin
from semisimple_hol.groups import abelian_invariants, center, inverts_center, search_inverting_automorphism
from semisimple_hol.holomorph import fmt_subset

from conftest import ALL_GROUPS, group

SPECS = Path(__file__).resolve().parents[1] / "specs"

# wall-clock limits in seconds
LIMIT_SL2_5 = 60
LIMIT_AMALGAMATED = 600
LIMIT_DIRECT = 900

_ANALYSES = {}


def analysis(key, oracle=False):
    if (key, oracle) not in _ANALYSES:
        start = time.perf_counter()
        a = analyze(group(key), oracle=oracle)
        _ANALYSES[(key, oracle)] = (a, time.perf_counter() - start)
    return _ANALYSES[(key, oracle)]


@pytest.fixture
def report_line(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return emit


def _failed(a, names=None):
    return {k: c.witness for k, c in a.checks.items() if not c.passed and (names is None or k in names)}


def test_sl2_5_end_to_end(report_line):
    start = time.perf_counter()
    G = group("sl2_5")
    a, _ = analysis("sl2_5", oracle=True)
    elapsed = time.perf_counter() - start
    rep = report_dict(a)
    oracle_sets = sorted(fmt_subset(J) for _, J in a.oracle)
    ok = (G.order == 120 and rep["decomposition"]["n"] == 1
          and rep["H"]["subsets"] == [[], [1]] and rep["H"]["size"] == 2
          and rep["T"]["order"] == 2 and rep["T"]["abelian_invariants"] == [2]
          and a.hol.order == 14400 and len(a.oracle) == 2 and oracle_sets == [[], [1]]
          and not _failed(a) and elapsed < LIMIT_SL2_5)
    report_line("SL(2,5) end to end", ok,
                f"|G|={G.order} n={rep['decomposition']['n']} H={rep['H']['subsets']} |T|={rep['T']['order']} "
                f"|Hol|={a.hol.order} oracle={oracle_sets} {elapsed:.1f}s (limit {LIMIT_SL2_5}s)")
    assert ok


def _two_factor_case(key, limit, report_line, label):
    start = time.perf_counter()
    a, _ = analysis(key)
    elapsed = time.perf_counter() - start
    rep = report_dict(a)
    wanted = ["gj_regular_and_normalized", "gj_pairwise_distinct", "gj_in_holomorph",
              "phi_conjugates_rho_to_gj", "phi_normalizes_holomorph", "phi_square_in_holomorph",
              "t_group_elementary_abelian", "t_group_regular"]
    bad = _failed(a, wanted)
    ok = (rep["decomposition"]["n"] == 2 and rep["H"]["size"] == 4 and len(a.gj) == 4
          and len(a.phis) == 4 and rep["T"]["order"] == 4 and rep["T"]["abelian_invariants"] == [2, 2]
          and all(k in a.checks for k in wanted) and not bad and elapsed < limit)
    report_line(label, ok, f"|G|={a.group.order} n={rep['decomposition']['n']} |H|={rep['H']['size']} "
                f"|T|={rep['T']['order']} failed={bad} {elapsed:.1f}s (limit {limit}s)")
    assert ok
    return a


def test_amalgamated_sl2_5_sl2_7(report_line):
    a = _two_factor_case("sl2_5_o_sl2_7", LIMIT_AMALGAMATED, report_line, "SL(2,5) o SL(2,7)")
    assert a.group.order == 20160


def test_direct_sl2_5_sl2_7(report_line):
    a = _two_factor_case("sl2_5_x_sl2_7", LIMIT_DIRECT, report_line, "SL(2,5) x SL(2,7)")
    assert a.group.order == 40320
    assert a.decomposition.l == 0


def test_swap_merges_isomorphic_components(report_line):
    a, _ = analysis("sl2_5_x_sl2_5")
    rep = report_dict(a)
    ok = (rep["decomposition"]["component_count"] == 2 and rep["decomposition"]["n"] == 1
          and rep["H"]["size"] == 2 and not _failed(a))
    report_line("SL(2,5) x SL(2,5) swap", ok,
                f"components={rep['decomposition']['component_count']} n={rep['decomposition']['n']} "
                f"|H|={rep['H']['size']}")
    assert ok


def test_three_a6(report_line):
    f = builtin("THREE_A6")
    K = f.group
    searched = search_inverting_automorphism(K)
    G = group("three_a6")
    alpha = inverting_automorphism(G)
    Z = center(G).elements
    a, _ = analysis("three_a6")
    rep = report_dict(a)
    ok = (K.order == 1080 and abelian_invariants(K, center(K)) == (3,)
          and searched is not None and inverts_center(searched)
          and Z.size == 3 and np.array_equal(alpha.image[Z], G.inverse[Z])
          and rep["H"]["size"] == 2 and rep["T"]["abelian_invariants"] == [2] and not _failed(a))
    report_line("3.A6", ok, f"|K|={K.order} Z={abelian_invariants(K, center(K))} search="
                f"{'found' if searched is not None else 'none'} inverted={Z.size} |H|={rep['H']['size']} "
                f"|T|={rep['T']['order']}")
    assert ok


IDENTITY_CHECKS = [
    "rho_lambda_commute", "inversion_swaps_rho_lambda", "gj_in_holomorph",
    "inversion_conjugates_gj_to_complement", "phi_conjugates_rho_to_gj", "phi_square_in_holomorph",
    "circ_full_is_product", "circ_empty_is_opposite", "phi_is_circ_isomorphism",
]


def test_identity_suites_on_all_groups(report_line):
    results = {}
    for key in ALL_GROUPS:
        a, _ = analysis(key)
        missing = [k for k in IDENTITY_CHECKS if k not in a.checks]
        results[key] = (missing, _failed(a, IDENTITY_CHECKS))
    ok = all(not m and not f for m, f in results.values())
    bad = {k: v for k, v in results.items() if v[0] or v[1]}
    report_line("identity suites", ok, f"{len(ALL_GROUPS)} groups x {len(IDENTITY_CHECKS)} checks, failures={bad}")
    assert ok


def test_formula_suite(report_line):
    positives = [D("PSL3_4", (2, 2, 3)), D("U4_3", (3, 4)), D("U6_2", (2, 2, 3)), D("TWO_E6_2", (2, 2, 3))]
    negatives = [D("PSL3_4", (4, 3)), D("PSL3_4", (2, 3)), D("U4_3", (3, 3)), D("U6_2", (2, 2)),
                 D("A5", (2,)), D("A6", (3,))]
    table_ok = all(in_L(d) for d in positives) and not any(in_L(d) for d in negatives)
    names_ok = len(load_rules()["rules"]) == 4
    count = count_L_up_to_iso()
    cases = [(1, 0), (1, 1), (2, 1), (3, 2), (5, 5)]
    hand = {(1, 0): 1, (1, 1): 1, (2, 1): 2, (3, 2): 2, (5, 5): 1}
    formula_ok = all(h_bounds(n, l) == (hand[(n, l)], n) and amalgamated_count(n, l) == 2 ** hand[(n, l)]
                     for n, l in cases)
    ok = table_ok and names_ok and count == 9 and formula_ok
    report_line("formula suite", ok, f"in_L table={'ok' if table_ok else 'wrong'} |L|={count} "
                f"bounds={'ok' if formula_ok else 'wrong'}")
    assert ok


def test_report_is_deterministic(report_line, tmp_path):
    spec = SPECS / "sl2_5_o_sl2_7.spec"
    codes = [run(["report", "--spec", str(spec), "--out", str(tmp_path / d)]) for d in ("a", "b")]
    first = (tmp_path / "a" / "report.json").read_bytes()
    second = (tmp_path / "b" / "report.json").read_bytes()
    ok = codes == [0, 0] and first == second
    report_line("deterministic report", ok, f"exit codes {codes}, {len(first)} bytes, identical={first == second}")
    assert ok
