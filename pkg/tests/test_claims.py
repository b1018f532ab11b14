import pytest

from ads3 import claims
from ads3.catalog import GroupLabel


@pytest.mark.parametrize("label", list(GroupLabel), ids=lambda l: l.value)
def test_reconcile_agreement_and_flags(label):
    rep = claims.reconcile(label, 200, 0)
    assert rep.agreement_rate >= claims.AGREEMENT_TARGET
    assert rep.mismatches_near_boundary
    expected = {c.expected_flag for c in claims.claims_for(label) if c.expected_flag}
    assert rep.flagged_sets == expected
    assert all(d["expected"] for d in rep.claim_discrepancies)


def test_documented_discrepancy_sets():
    assert claims.EXPECTED_FLAGS == {"AxA.boundary", "DiagSL2.parabolic"}


def test_axk_has_no_discrepancies():
    rep = claims.reconcile("AxK", 1000, 0)
    assert rep.agreement_rate == 1.0
    assert rep.claim_discrepancies == []


def test_axa_boundary_is_degenerate():
    rep = claims.reconcile("AxA", 50, 0)
    boundary = [d for d in rep.claim_discrepancies if d["set"] == "AxA.boundary"]
    assert boundary and all(d["engine"] == "DegenerateSurface" for d in boundary)
    assert all("SpacelikeSurface" in d["claimed"] for d in boundary)


def test_diagsl2_parabolic_is_degenerate():
    rep = claims.reconcile("DiagSL2", 50, 0)
    para = [d for d in rep.claim_discrepancies if d["set"] == "DiagSL2.parabolic"]
    assert para and all(d["engine"] == "DegenerateSurface" for d in para)


def test_coarse_tolerance_is_skipped_not_failed():
    rep = claims.reconcile("AxA", 300, 0, tol=1e-3)
    assert rep.agreement_rate >= claims.AGREEMENT_TARGET
    assert rep.mismatches_near_boundary


def test_report_dict_and_bad_samples():
    d = claims.reconcile("GFN", 5, 1).to_dict()
    assert {"agreement_rate", "flagged_sets", "skipped_near_boundary", "rank_warnings"} <= set(d)
    with pytest.raises(ValueError):
        claims.reconcile("GFN", 0, 0)
