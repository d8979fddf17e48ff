"""Smoke test for the uiab extension module.

Build and install first, e.g. `pip install ./crates/uiab-py`, then run
`python python/smoke_test.py` or `pytest python/smoke_test.py`.
"""

import json
from pathlib import Path

import uiab

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def test_catalog():
    names = uiab.catalog()
    assert "lambda-s3" in names and "tstar-s1" in names


def test_fixture_basics():
    f = uiab.fixture("lambda-s1-plus", window=12, ring="Z")
    assert f.name == "lambda-s1-plus"
    assert f.ring == "Z"
    assert ("1", 0) in f.basis()
    assert f.lambda_eta() == "A⊗1 - 1⊗A"
    assert f.mu("1", "A") == "A"
    assert uiab.fixture("omega-s1-minus", ring="GF(5)").lambda_eta() == "4 1⊗1"


def test_axioms_pass_over_every_ring():
    for ring in ["Z", "Q", "GF(5)"]:
        report = json.loads(uiab.fixture("omega-s3", ring=ring).check_axioms())
        statuses = {c["status"] for s in report["sections"] for c in s["checks"]}
        assert "fail" not in statuses, (ring, statuses)


def test_smith_normal_form():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    snf = uiab.smith_normal_form(m)
    assert snf["invariants"] == [2, 6, 12]
    assert snf["rank"] == 3
    u, v, d = snf["u"], snf["v"], snf["d"]
    um = [[sum(u[i][k] * m[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    umv = [[sum(um[i][k] * v[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert umv == d


def test_scenarios():
    ok, text = uiab.run_scenario((SCENARIOS / "minimal.json").read_text())
    assert ok and json.loads(text)["sections"]
    ok, text = uiab.run_scenario((SCENARIOS / "broken.json").read_text())
    assert not ok
    ok, _ = uiab.run_scenario(uiab.export_fixture("lambda-s1-plus", window=7), ring="Q")
    assert ok


def test_errors():
    for call in [
        lambda: uiab.fixture("lambda-s2"),
        lambda: uiab.fixture("lambda-s3", ring="GF(4)"),
        lambda: uiab.run_scenario("{"),
    ]:
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        uiab.fixture("lambda-s3").mu("nope", "1")
    except KeyError:
        pass
    else:
        raise AssertionError("expected KeyError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
