import json

import pytest

from sturmian_periods.errors import UnknownScenario
from sturmian_periods.harness import run_scenario, scenario_names, sweep
from sturmian_periods.harness.cli import main
from sturmian_periods.harness.report import reports_csv
from sturmian_periods.harness.scenarios import CHECKS, describe

from conftest import FIB

KEYS = {"scenario", "slope", "params", "observed", "expected", "status", "depth", "ms"}


def test_registry_is_consistent():
    names = scenario_names()
    assert len(names) == len(set(names))
    for name in names:
        for c in describe(name)["checks"]:
            assert c["kind"] in CHECKS
            assert c["expect"]["op"] in ("eq", "subset", "contains", "not_contains")


@pytest.mark.parametrize("name", ["fib-m9", "slope-2321-no9", "kab-0100110"])
def test_named_scenarios_pass(name):
    r = run_scenario(name)
    assert r.status == "pass", r.checks
    assert KEYS <= set(r.to_dict())
    assert json.loads(r.to_json()) == json.loads(json.dumps(r.to_dict()))


def test_fib_m9_report():
    r = run_scenario("fib-m9")
    assert r.observed["abexp"] == 2
    assert r.observed["main_inequality"] == [99, 34, False]
    assert 9 not in r.observed["abelian_period_set"]
    assert r.depth > 0


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        run_scenario("no-such-thing")


def test_precision_exhaustion_is_inconclusive():
    r = run_scenario("fib-m9", {"depth": 4})
    assert r.status == "inconclusive"
    assert "InsufficientExpansion" in r.checks[0]["error"]


def test_failing_expectation_reports_fail():
    r = run_scenario("ineq-fib-m4", {"slope": "0;(2,1)"})
    assert r.status == "fail" and r.slope == "0;(2,1)"


def test_sweep_trivial_length(slope):
    assert sweep(slope, 1)["values"] == [1]


def test_sweep_worker_independence():
    one = sweep(FIB, 40, "abelian", workers=1, factors=True)
    for w in (2, 8):
        assert sweep(FIB, 40, "abelian", workers=w, factors=True) == one
    k1 = sweep(FIB, 30, "kabelian", k=2, sense=1, workers=1)
    assert sweep(FIB, 30, "kabelian", k=2, sense=1, workers=2) == k1


def test_sweep_conjecture_report():
    out = sweep("0;(2)", 150)
    assert out["violations"] == []
    from sturmian_periods import SlopeContext, denominator_sets
    admissible = denominator_sets(SlopeContext("0;(2)"), 150).admissible
    assert set(out["values"]).isdisjoint(out["unrealized"])
    assert set(out["values"]) | set(out["unrealized"]) == admissible
    assert all(isinstance(w, str) for w in out["witness"].values())


def test_sweep_rejects_bad_input():
    with pytest.raises(ValueError):
        sweep(FIB, 0)
    with pytest.raises(ValueError):
        sweep(FIB, 5, "nope")


def _strip_ms(obj):
    if isinstance(obj, dict):
        return {k: _strip_ms(v) for k, v in obj.items() if k != "ms"}
    if isinstance(obj, list):
        return [_strip_ms(v) for v in obj]
    return obj


def test_cli_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "fib-m9", "--json", str(a)]) == 0
    assert main(["verify", "fib-m9", "--json", str(b)]) == 0
    assert _strip_ms(json.loads(a.read_text())) == _strip_ms(json.loads(b.read_text()))
    for p in (a, b):
        text = p.read_text()
        p.write_text("\n".join(line for line in text.splitlines() if '"ms"' not in line))
    assert a.read_text() == b.read_text()


def test_cli_sweep_json_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["sweep", "--slope", FIB, "--length", "30", "--json", str(a)])
    main(["sweep", "--slope", FIB, "--length", "30", "--workers", "2", "--json", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["verify", "ineq-21-m4"]) == 1
    assert main(["verify", "nope"]) == 2
    assert main(["gen", "--slope", "0;1,(2)"]) == 2
    assert main(["gen", "--slope", "0;2,(1"]) == 2
    assert main(["verify", "fib-m9", "--depth", "4"]) == 3
    with pytest.raises(SystemExit) as e:
        main(["sweep"])
    assert e.value.code == 2


def test_cli_verbs(tmp_path, capsys):
    assert main(["gen", "--length", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["prefix"] == "0100101001"
    assert main(["min-period", "01001010"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["period"], out["abelian_period"]) == (5, 2)
    assert main(["kab", "0100110", "--k", "2", "--sense", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["period"] == 4
    assert main(["bounds", "--m", "9"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["lhs"], out["rhs"], out["verdict"]) == (99, 34, "excluded")
    assert main(["singular", "--k", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["singular"] == "00100" and out["return_times"] == [8, 13]
    assert main(["slope-info", "--slope", "0;2,6,(1)", "--length", "15"]) == 0
    assert json.loads(capsys.readouterr().out)["Qkl"] == [1, 2, 3, 5, 7, 9, 11, 13, 15]
    assert main(["factors", "--length", "3"]) == 0
    assert len(json.loads(capsys.readouterr().out)["factors"]) == 4
    csv_path = tmp_path / "f.csv"
    assert main(["period-set", "--length", "6", "--csv", str(csv_path)]) == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "length,factor,period" and len(rows) == 1 + sum(n + 1 for n in range(1, 7))


def test_reports_csv():
    text = reports_csv([run_scenario("fib-m9")])
    assert text.splitlines()[0] == "scenario,check,slope,status,observed,expected"
    assert len(text.splitlines()) == 4
