import json

import pytest

from jordanfib.idn import parse_file, verify
from jordanfib.suites import (
    ManifestError, UnknownSuite, check_coverage, discrepancy_ledger, full_report, ledger_text,
    load_manifest, load_suite, run_statements, run_suite, suite_names,
)
from jordanfib.suites import default_grid

EXPECTED_PARTS = {"classic": 10, "fibonacci9": 9, "fibonacci21": 20, "fibonacci6": 6,
                  "binomial": 11, "pell": 31, "tribonacci": 2}


def test_coverage():
    assert check_coverage() == 89 == sum(EXPECTED_PARTS.values())
    for name, count in EXPECTED_PARTS.items():
        assert len(load_suite(name)) == count
    assert [s.label for s in load_suite("fibonacci21")] == ["1"] + [str(i) for i in range(3, 22)]


def test_coverage_detects_bad_manifest():
    m = json.loads(json.dumps(load_manifest()))
    m["total_parts"] = 90
    with pytest.raises(ManifestError):
        check_coverage(m)
    m = json.loads(json.dumps(load_manifest()))
    m["suites"]["classic"]["labels"] = m["suites"]["classic"]["labels"][:-1]
    with pytest.raises(ManifestError):
        check_coverage(m)


def test_classic_all_verified_with_empty_ledger():
    rep = run_suite("classic")
    assert rep.counts() == {"VERIFIED": 10, "FAILED": 0, "INCOMPLETE": 0}
    assert all(p.report["grid"] in ({"n": [1, 30]}, {"n": [1, 30], "m": [1, 30]}) for p in rep.parts)
    assert discrepancy_ledger([rep]) == []
    assert ledger_text([]) == "discrepancy ledger: empty"


def test_pell_part_6_on_its_stated_range():
    stmt = next(s for s in load_suite("pell") if s.label == "6")
    assert verify(stmt, {"n": (1, 20)}).verified


def test_binomial_part_5():
    stmt = next(s for s in load_suite("binomial") if s.label == "5")
    assert verify(stmt, {"n": (1, 8), "k": (1, 4)}).verified


@pytest.mark.parametrize("name,anchors", [
    ("classic", None), ("binomial", None), ("tribonacci", ["1", "2"]), ("pell", ["1", "3", "6", "24"]),
])
def test_anchor_parts_verified(name, anchors):
    rep = run_suite(name)
    parts = [p for p in rep.parts if anchors is None or p.label in anchors]
    assert all(p.anchor for p in parts)
    assert all(p.status == "VERIFIED" for p in parts)
    assert rep.anchors_ok


def test_default_grids():
    by_label = {s.label: s for s in load_suite("pell")}
    assert default_grid(by_label["24"]) == {"l": (1, 30), "m": (1, 30)}
    seen = set()
    for name in EXPECTED_PARTS:
        for s in load_suite(name):
            g = default_grid(s)
            his = {hi for _, hi in g.values()}
            seen |= his
            if 6 in his:
                continue
            assert his == ({12} if len(g) >= 3 else {30})
    assert seen == {6, 12, 30}


def test_negative_control_mistranscription():
    text = ("params n m;\n"
            "1: F(n)^2+F(n+1)^2 == F(2*n+1)\n"
            "2: F(m)*F(n)+F(m+1)*F(n+1) == F(m+n)\n")
    rep = run_statements("control", parse_file(text), {"source": "control", "anchors": "all", "parts": {}})
    ledger = discrepancy_ledger([rep])
    assert len(ledger) == 1
    e = ledger[0]
    assert (e["part"], e["status"], e["anchor"]) == ("2", "FAILED", True)
    assert e["counterexample"]["point"] == {"n": 1, "m": 1}
    assert not rep.anchors_ok


def test_full_run_ledger_is_stable_and_anchors_hold():
    first = full_report()
    assert first["anchors_ok"]
    ledger = {(e["suite"], e["part"]) for e in first["ledger"]}
    assert ledger == {("pell", "21"), ("examples", "fl4")}
    for e in first["ledger"]:
        assert e["correction"]["status"] == "VERIFIED"
        assert not e["anchor"]
    again = full_report(jobs=4)
    assert json.dumps(first, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_every_report_only_part_has_a_verdict():
    for name in suite_names():
        for p in run_suite(name).parts:
            assert p.status in ("VERIFIED", "FAILED", "INCOMPLETE")
            assert p.report["points"] > 0


def test_pell_coefficient_n_part_is_reported():
    part = next(p for p in run_suite("pell").parts if p.label == "2")
    assert not part.anchor and part.status == "VERIFIED"


def test_run_suite_from_path(tmp_path):
    f = tmp_path / "mine.idn"
    f.write_text("params n;\nok: L(n) == F(n-1)+F(n+1)\nbad: L(n) == F(n)\n", encoding="utf-8")
    rep = run_suite(str(f))
    assert rep.name == "mine" and [p.status for p in rep.parts] == ["VERIFIED", "FAILED"]


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
