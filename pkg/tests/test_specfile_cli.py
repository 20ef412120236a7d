import json
from pathlib import Path

import pytest

from semisimple_hol.cli import run
from semisimple_hol.specfile import SpecError, load_spec, parse_spec

SPECS = Path(__file__).resolve().parents[1] / "specs"


def test_parse_amalgamated():
    spec = load_spec(SPECS / "sl2_5_o_sl2_7.spec")
    assert spec.factors == [("builtin", "SL2_5"), ("builtin", "SL2_7")]
    assert spec.amalgamations == [(0, ("power", 1), 1, ("power", 1))]
    assert not spec.oracle


def test_parse_selectors_and_analysis():
    spec = parse_spec("""
        [factor]
        special_linear = 2 5   # trailing comment
        [factor]
        builtin = SL2_7
        [amalgamate]
        factors = 2 1
        elements = z^3 @7
        [analysis]
        oracle = yes
        guard = 500
    """)
    assert spec.factors[0] == ("special_linear", 2, 5)
    assert spec.amalgamations == [(1, ("power", 3), 0, ("index", 7))]
    assert spec.oracle and spec.guard == 500


def test_mode_full_matches_z_z():
    a = parse_spec("[factor]\nbuiltin = SL2_5\n[factor]\nbuiltin = SL2_7\n[amalgamate]\nfactors = 1 2\nmode = full\n")
    b = load_spec(SPECS / "sl2_5_o_sl2_7.spec")
    assert a.amalgamations == b.amalgamations


@pytest.mark.parametrize("text", [
    "",
    "builtin = SL2_5",
    "[factor]\nbuiltin = NOPE",
    "[factor]\nspecial_linear = 2 9",
    "[factor]\nbuiltin = SL2_5\nspecial_linear = 2 5",
    "[group]\nbuiltin = SL2_5",
    "[factor]\nbuiltin SL2_5",
    "[factor]\nbuiltin = SL2_5\n[amalgamate]\nfactors = 1 3\nelements = z z",
    "[factor]\nbuiltin = SL2_5\n[factor]\nbuiltin = SL2_5\n[amalgamate]\nfactors = 1 2\nelements = q z",
    "[factor]\nbuiltin = SL2_5\n[analysis]\nspeed = 11",
])
def test_parse_errors(text):
    with pytest.raises(SpecError):
        parse_spec(text)


def test_build_special_linear_matches_builtin():
    G = load_spec(SPECS / "sl2_5_x_sl2_7.spec").build()
    assert G.order == 40320
    assert G.factor_descriptor(0).simple == "A5"


def test_formula(capsys, tmp_path):
    assert run(["formula", "--n", "3", "--l", "2", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "m=2" in out and "[4, 8]" in out
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["bounds"] == [4, 8] and rep["m"] == 2


def test_formula_invalid():
    assert run(["formula", "--n", "2", "--l", "5"]) == 2


def test_bad_spec_exit_codes(tmp_path, capsys):
    assert run(["report", "--spec", str(SPECS / "bad_noncentral.spec"), "--out", str(tmp_path)]) == 2
    assert "InvalidAmalgamation" in capsys.readouterr().err
    assert run(["build", "--spec", str(tmp_path / "missing.spec"), "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.spec"
    bad.write_text("[factor]\nbuiltin = SL9\n")
    assert run(["build", "--spec", str(bad), "--out", str(tmp_path)]) == 2


def test_guard_exit_code(tmp_path):
    assert run(["oracle-j", "--spec", str(SPECS / "sl2_5.spec"), "--out", str(tmp_path), "--guard", "100"]) == 4
    # the holomorph of 3.A6 is far above the default guard
    assert run(["report", "--spec", str(SPECS / "three_a6.spec"), "--out", str(tmp_path), "--oracle"]) == 4


@pytest.mark.parametrize("cmd, keys", [
    ("build", {"group"}),
    ("decompose", {"group", "decomposition"}),
    ("holomorph", {"group", "decomposition", "holomorph"}),
    ("hset", {"group", "decomposition", "holomorph", "H"}),
    ("tgroup", {"group", "decomposition", "holomorph", "H", "T"}),
    ("oracle-j", {"group", "decomposition", "holomorph", "oracle"}),
])
def test_subcommands(cmd, keys, tmp_path):
    spec = "sl2_5.spec" if cmd == "oracle-j" else "three_a6.spec"
    code = run([cmd, "--spec", str(SPECS / spec), "--out", str(tmp_path)])
    rep = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
    assert code == 0
    assert keys <= set(rep) and rep["schema"] == 1 and rep["ok"]
    assert (tmp_path / "summary.txt").exists()
