import pytest

from unimod import constructors as C
from unimod.derived import derived_series
from unimod.equations import obstruction_element
from unimod.suite import (FAIL, FAULTS, PASS, SKIPPED, SuiteConfig, main_theorem_harness,
                          metabelian_family, order_six_residues, parse_machine_report, run_all,
                          verify_action_branches, verify_construction, verify_hope_family,
                          verify_obstruction_differs, verify_ring_identity, verify_no_solution,
                          verify_obstruction, verify_remark_and_hope)


@pytest.fixture(scope="module")
def report():
    return run_all(SuiteConfig(n_max=4), timestamp=False)


def test_individual_checks_pass(G42):
    a, c = G42.marked["a"], G42.marked["c"]
    for r in (verify_construction(G42), verify_obstruction_differs(G42, a, c), verify_action_branches(),
              verify_ring_identity(G42, a), verify_no_solution(G42, a, c),
              verify_obstruction(G42, a, c), verify_remark_and_hope(G42)):
        assert r.status == PASS, (r.id, r.details)
        assert r.assertions and all(r.assertions.values())


def test_obstruction_differs_details_and_skips(G42):
    r = verify_obstruction_differs(G42, G42.marked["a"], G42.marked["c"])
    assert r.details["g"] == "c^5"
    G3 = C.g42(3)
    r = verify_obstruction_differs(G3, G3.marked["a"], G3.marked["c"])
    assert r.status == SKIPPED and "c^a != c^3" in r.details["reason"]
    assert r.details["g"] == "c"
    A = C.cyclic(5)
    r = verify_obstruction_differs(A, A.identity, A.identity)
    assert r.status == SKIPPED and "c != 1" in r.details["reason"]


def test_harness_small_n(G42):
    for n in (2, 3):
        r = main_theorem_harness(n, G42)
        assert r.status == PASS, r.details
    r = main_theorem_harness(3, G42)
    assert r.details["B_order"] == 2
    assert r.details["H_coordinates"] == 42


def test_harness_above_cap_skips():
    assert main_theorem_harness(6).status == SKIPPED


def test_harness_rejects_small_n():
    assert main_theorem_harness(1).status == FAIL


def test_hope_family():
    assert order_six_residues(7) == [3, 5]
    assert order_six_residues(11) == []
    r = verify_hope_family()
    assert r.status == PASS
    assert any(t.startswith("p=31") for t in r.details["cases"])


def test_metabelian_family_is_deterministic():
    f1 = [G.name for G in metabelian_family(0, 60)]
    f2 = [G.name for G in metabelian_family(0, 60)]
    assert f1 == f2 and len(f1) >= 50


def test_report_ids_and_skips(report):
    ids = [c.id for c in report.checks]
    assert ids == ["construction", "obstruction-differs-from-c", "action-case-analysis",
                   "ring-identity", "no-solution-in-group", "metabelian-obstruction",
                   "harness-n2", "harness-n3", "harness-n4", "harness-n5",
                   "second-obstruction", "second-obstruction-family",
                   "solution-forces-trivial-obstruction"]
    status = {c.id: c.status for c in report.checks}
    assert status["harness-n5"] == SKIPPED
    assert all(s == PASS for k, s in status.items() if k != "harness-n5")
    assert report.ok


def test_n_max_two_skips_higher_harness():
    r = run_all(SuiteConfig(n_max=2, family_size=50, pairs_per_group=5), timestamp=False)
    status = {c.id: c.status for c in r.checks}
    assert status["harness-n2"] == PASS
    assert all(status[f"harness-n{n}"] == SKIPPED for n in (3, 4, 5))


def test_report_determinism_and_roundtrip(report):
    again = run_all(SuiteConfig(n_max=4), timestamp=False)
    assert again.to_machine() == report.to_machine()
    back = parse_machine_report(report.to_machine())
    assert [(c.id, c.status) for c in back.checks] == [(c.id, c.status) for c in report.checks]
    assert back.to_machine() == report.to_machine()
    assert "passed" in report.to_text().splitlines()[-1]


def test_timestamp_is_only_difference():
    import json
    cfg = SuiteConfig(n_max=2, family_size=50, pairs_per_group=5)
    a = json.loads(run_all(cfg).to_machine())
    b = json.loads(run_all(cfg, timestamp=False).to_machine())
    assert a["generated_at"] and not b["generated_at"]
    a.pop("generated_at"), b.pop("generated_at")
    assert a == b


def test_assertions_reproduce_through_module_apis(G42, report):
    status = {c.id: c for c in report.checks}
    cons = status["construction"].assertions
    s = derived_series(G42)
    a, c = G42.marked["a"], G42.marked["c"]
    assert cons["order 42"] == (G42.size == 42)
    assert cons["derived series sizes 42, 7, 1"] == (s.sizes == [42, 7, 1])
    assert cons["c^a = c^5"] == (G42.conj(c, a) == G42.power(c, 5))
    obs = status["metabelian-obstruction"].assertions
    assert obs["g = c^5"] == (obstruction_element(G42, a, c) == G42.power(c, 5))


ALWAYS_FAIL = {"construction": FAIL, "harness-n2": FAIL, "harness-n3": FAIL,
               "second-obstruction": FAIL, "harness-n4": SKIPPED, "harness-n5": SKIPPED}
FAULT_PATTERNS = {
    "order1-action": {"obstruction-differs-from-c": SKIPPED, "no-solution-in-group": FAIL,
                      "metabelian-obstruction": SKIPPED},
    "order2-action": {"no-solution-in-group": FAIL, "metabelian-obstruction": FAIL},
    "order3-action": {"no-solution-in-group": FAIL, "metabelian-obstruction": FAIL},
    "excluded-action": {"obstruction-differs-from-c": SKIPPED, "metabelian-obstruction": FAIL},
}


@pytest.mark.parametrize("fault", sorted(FAULTS))
def test_faults_are_detected(fault):
    r = run_all(SuiteConfig(n_max=3, fault=fault, family_size=50, pairs_per_group=5), timestamp=False)
    non_pass = {c.id: c.status for c in r.checks if c.status != PASS}
    assert not r.ok
    assert non_pass == {**ALWAYS_FAIL, **FAULT_PATTERNS[fault]}


def test_unknown_fault_rejected():
    with pytest.raises(ValueError):
        SuiteConfig(fault="nope")
