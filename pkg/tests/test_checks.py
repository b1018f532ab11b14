import math

import pytest

from ads3 import checks


@pytest.fixture(scope="module")
def small_suite():
    return checks.run_suite(["AxK", "GFN", "GFK", "AffxA"], samples=100, seed=0)


def test_statuses(small_suite):
    assert {c.status for c in small_suite} <= {checks.PASS, checks.FLAG, checks.FAIL}
    assert checks.suite_passed(small_suite)
    names = [c.name for c in small_suite]
    assert len(names) == len(set(names))


def test_expected_flags_are_the_documented_deviations(small_suite):
    flagged = {c.name for c in small_suite if c.status == checks.FLAG}
    assert flagged == {
        "GFK.poly.printed",
        "GFN.properness.certificate",
        "GFN.properness.ray_events",
        "GFN.topology.degenerate_orbits_inseparable",
    }


def test_check_dicts_are_finite(small_suite):
    for c in small_suite:
        d = c.to_dict()
        assert set(d) == {"name", "status", "margin"}
        assert math.isfinite(d["margin"])


def test_check_builders():
    assert checks.error_check("x", 1e-3, 1e-6).status == checks.FAIL
    assert checks.error_check("x", 1e-3, 1e-6, flag=True).status == checks.FLAG
    assert checks.error_check("x", 1e-9, 1e-6).status == checks.PASS
    assert checks.flag_check("y", True).status == checks.PASS
    assert not checks.suite_passed([checks.flag_check("y", False)])
    assert checks.suite_passed([checks.flag_check("y", False, flag=True)])


def test_census_checks_detect_wrong_counts():
    rep = {"by_class": {"Singular": {"distinct_ids": 3}}, "by_character": {}, "stratum_points": 10}
    (c,) = checks.census_checks("AxA", rep)
    assert c.status == checks.FAIL


def test_workers_do_not_change_results():
    a = [c.to_dict() for c in checks.run_suite(["AxA", "NxN"], 50, 1, workers=1)]
    b = [c.to_dict() for c in checks.run_suite(["AxA", "NxN"], 50, 1, workers=2)]
    assert a == b


def test_exp_identity():
    assert checks.exp_identity_error() < checks.EXP_TOL
