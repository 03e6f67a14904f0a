import pytest

from ppfn import verify
from ppfn.verify import SUITES, Bounds, CaseResult, SuiteReport, run_case, run_suite, suite_cases

SMALL = {
    "macmahon": Bounds(max=2),
    "thm13": Bounds(max=2, max_size=2, order=8),
    "thm15": Bounds(max=2, max_size=4, order=8),
    "prop12": Bounds(max_size=1, order=6),
    "cor14": Bounds(max=2, max_mu=2),
    "cauchy": Bounds(max=2),
    "commutation": Bounds(count=5),
    "decomposition": Bounds(max=2, max_size=2, order=6),
}


@pytest.mark.parametrize("suite", SUITES)
def test_small_suites_pass(suite):
    report = run_suite(suite, SMALL[suite], jobs=1)
    assert report.results and report.passed
    doc = report.to_json()
    assert doc["total"] == len(report.results) and doc["failed"] == 0


def test_case_grid_sizes():
    assert len(suite_cases("macmahon")) == 64
    assert len(suite_cases("commutation", Bounds(count=100))) == 400
    assert all(c["order"] == 14 for c in suite_cases("thm15"))
    assert len(suite_cases("thm15")) == 11
    with pytest.raises(ValueError):
        suite_cases("nonsense")


def test_failure_reporting():
    r = CaseResult("x", {"a": 1}, False, 7, "boom")
    assert r.to_json() == {"case": {"a": 1}, "passed": False, "first_mismatch": "q^{7/2}", "detail": "boom"}
    rep = SuiteReport("x", [r, CaseResult("x", {}, True)])
    assert not rep.passed and rep.to_json()["failed"] == 1


def test_crash_becomes_failed_case():
    r = run_case("macmahon", {"a": -1, "b": 1, "c": 1})
    assert not r.passed and r.detail.startswith("ValueError")


def test_parallel_matches_serial(monkeypatch):
    serial = run_suite("cor14", SMALL["cor14"], jobs=1)
    parallel = run_suite("cor14", SMALL["cor14"], jobs=2)
    assert serial.to_json() == parallel.to_json()
    monkeypatch.setenv("PPFN_JOBS", "3")
    assert verify.default_jobs() == 3
    monkeypatch.delenv("PPFN_JOBS")
    assert verify.default_jobs() == 1
