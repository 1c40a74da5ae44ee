import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxrank.harness import Config, parse_types, run_suite
from maxrank.harness.cli import main
from maxrank.harness.realizations import (cusp_range, enumerate_realizations,
                                          extremal_realization, invariants, random_realization)
from maxrank.harness.report import dumps, to_csv
from maxrank.harness.suites import LASTTHM_ROWS, build_cases, tacnode_partitions
from maxrank.harness.typespec import format_types
from maxrank.schemes import Cusp, HmesComponent, SimplePoint, Tacnode, TwoCurvilinear
from maxrank.staircase import Staircase


def test_parse_types():
    assert parse_types("A1*3,A2,P") == [Tacnode(1)] * 3 + [Cusp(2), SimplePoint()]
    assert parse_types("A3,A4") == [Tacnode(2), Cusp(3)]
    assert parse_types("C10:7") == [TwoCurvilinear(10, 7)]
    assert parse_types("H10:17,6:5") == [HmesComponent(10, Staircase((17, 6)), 5)]
    assert parse_types("H0:1:1") == [HmesComponent(0, Staircase((1,)), 1)]
    for bad in ["", "A0", "X", "A1,", "H2:2,1", "A1**2"]:
        with pytest.raises(ValueError):
            parse_types(bad)


def test_format_roundtrip():
    spec = "A1,A1,A2,P,C10:7,H2:2,1:1"
    assert format_types(parse_types(spec)) == spec


def test_config_validation():
    Config().validate(100)
    for cfg in [Config(prime=100), Config(trials=0), Config(workers=0)]:
        with pytest.raises(ValueError):
            cfg.validate()
    with pytest.raises(ValueError):
        Config(prime=13).validate(20)
    a, b = Config().case_seed("x", 3), Config().case_seed("x", 3)
    assert a == b != Config().case_seed("x", 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(N, l) for _, N, l in LASTTHM_ROWS]), st.integers(0, 2**32 - 1))
def test_random_realizations_hit_the_invariants(row, seed):
    comps = random_realization(*row, np.random.default_rng(seed))
    assert invariants(comps) == row


def test_realization_counts():
    assert [format_types(c) for c in enumerate_realizations(55, 33)] == [",".join(["A2"] * 11)]
    assert len(enumerate_realizations(45, 27)) == 1
    assert len(enumerate_realizations(28, 17)) == 2
    assert list(cusp_range(66, 40)) == [12, 13]
    for _, N, l in LASTTHM_ROWS:
        reals = enumerate_realizations(N, l)
        assert all(invariants(r) == (N, l) for r in reals)
        assert len({format_types(sorted(r, key=str)) for r in reals}) == len(reals)
        assert invariants(extremal_realization(N, l)) == (N, l)
    with pytest.raises(ValueError):
        random_realization(20, 10, np.random.default_rng(0))


def test_tacnode_partitions_of_five():
    assert sorted(tacnode_partitions(5)) == sorted(
        ["A9", "A7,A1", "A5,A3", "A5,A1,A1", "A3,A3,A1", "A3,A1,A1,A1", "A1,A1,A1,A1,A1"])


def test_exceptions_suite():
    rep = run_suite("exceptions")
    assert rep.passed and len(rep.cases) == 10
    assert all(c["min_deficiency"] >= 1 for c in rep.cases)
    two = rep.cases[0]
    assert all(r["rank"] == 5 for r in two["reports"])


def test_nodes_grid_flags_five_nodes_in_degree_four():
    rep = run_suite("nodes-grid", select=lambda c: c.label == "nodes r=5 d=4")
    (case,) = rep.cases
    assert case["pass"] and case["verdict"] == "ProbablyDeficient" and case["min_deficiency"] == 1


def test_chains_suite_selection():
    rep = run_suite("chains", select=lambda c: c.label in ("chains N=300", "direct d=11 N=78 l=47"))
    assert rep.passed and rep.cases[0]["checked"] > 0
    assert rep.cases[1]["route"] == "H10:17,6:5" and rep.cases[1]["checked_directly"] == 0


def test_unknown_suite_and_bad_prime():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("exceptions", Config(prime=7))


def test_reports_are_deterministic():
    a = dumps(run_suite("exceptions", Config(seed=3)).to_dict())
    b = dumps(run_suite("exceptions", Config(seed=3)).to_dict())
    assert a == b
    assert a != dumps(run_suite("exceptions", Config(seed=4)).to_dict())


def test_worker_pool_preserves_order():
    sel = lambda c: c.label.startswith("tacnodes")  # noqa: E731
    serial = run_suite("exceptions", Config(), select=sel).cases
    pooled = run_suite("exceptions", Config(workers=2), select=sel).cases
    assert serial == pooled


def test_case_records_rerun_from_inputs():
    cases = build_cases("exceptions", Config())
    rep = run_suite("exceptions")
    rec = rep.cases[1]
    assert cases[1].fn(**rec["inputs"])["min_deficiency"] == rec["min_deficiency"]


def test_csv_export():
    text = to_csv(run_suite("exceptions").to_dict())
    lines = text.splitlines()
    assert lines[0].startswith("case,degree,components")
    assert lines[1].startswith("2 nodes d=2,2,\"A1,A1\",6,6,5")


def test_cli(tmp_path, capsys):
    assert main(["verify", "--types", "A2*11", "--degree", "9"]) == 0
    assert main(["verify", "--types", "A1*2", "--degree", "2", "--trials", "3"]) == 1
    assert main(["verify", "--types", "Q", "--degree", "2"]) == 2
    assert main(["chain", "100", "60"]) == 0
    out = tmp_path / "c.json"
    assert main(["chain", "78", "47", "--json", str(out)]) == 1
    data = json.loads(out.read_text())
    assert data["terminal"] == {"m": 10, "E": [17, 6], "s": 5} and data["needs_direct_check"]
    assert main(["oracle", "trace", "5,2", "4"]) == 0
    assert "trace colength 1" in capsys.readouterr().out
    assert main(["oracle", "flatstairs", "3,3", "1"]) == 1
    assert main(["oracle", "espbloc", "5,2", "1"]) == 0
    assert main(["oracle", "trace", "5,2"]) == 2
    assert main(["suite", "nope"]) == 2
    assert main(["chain"]) == 2
    csv = tmp_path / "e.csv"
    assert main(["suite", "exceptions", "--csv", str(csv), "--json", str(tmp_path / "e.json")]) == 0
    assert csv.read_text().count("\n") > 10
    assert json.loads((tmp_path / "e.json").read_text())["pass"] is True
