import dataclasses

import numpy as np
import pytest

from ads3 import properness as pr, sl2
from ads3.catalog import GroupLabel, IsometryPair, NONPROPER_LABELS, PROPER_LABELS, act, element
from ads3.properness import CertificateKind, ProperReason


@pytest.mark.parametrize("label", PROPER_LABELS, ids=lambda l: l.value)
def test_proper_labels_have_reasons_not_certificates(label):
    assert pr.certificate(label) is None
    assert pr.proper_reason(label) is not None


def test_compact_factor_reasons():
    for label in GroupLabel:
        if pr.proper_reason(label) is ProperReason.COMPACT_FACTOR:
            assert pr.has_compact_factor(label)
    assert not pr.has_compact_factor("AxA")


@pytest.mark.parametrize("label", [l for l in NONPROPER_LABELS if l is not GroupLabel.GFN], ids=lambda l: l.value)
def test_nonproper_certificates_verify(label):
    cert = pr.certificate(label)
    assert cert is not None
    check = pr.check_certificate(cert)
    assert check.passed, check.problems
    assert check.membership


def test_axn_escaping_image_matches_oracle(frozen):
    cert = pr.certificate("AxN")
    assert cert.kind is CertificateKind.ESCAPING_SEQUENCE
    np.testing.assert_allclose(cert.image(25).ravel(), frozen["axn_image_25"], atol=1e-15)
    # the float product cancels e^n-sized terms, so compare it at moderate n
    np.testing.assert_allclose(act(cert.pair(8), cert.point(8)), cert.image(8), atol=1e-9)


def test_gfn_witness_is_not_a_group_element():
    check = pr.check_certificate(pr.certificate("GFN"))
    assert not check.passed
    assert not check.membership


def test_tampered_certificate_fails():
    cert = pr.certificate("AxN")
    bad = dataclasses.replace(cert, pair=lambda n: IsometryPair(sl2.a_t(n), sl2.k_t(0.3)))
    assert not pr.verify_certificate(bad)


def test_stabilizer_certificate_directions_are_noncompact():
    for label in NONPROPER_LABELS:
        cert = pr.certificate(label)
        if cert.kind is CertificateKind.NONCOMPACT_STABILIZER:
            d = cert.stab_direction
            assert any(np.any(m) for m in d)


@pytest.mark.parametrize("label", PROPER_LABELS, ids=lambda l: l.value)
def test_falsification_finds_nothing_for_proper_labels(label):
    rep = pr.falsify_properness(label, 200, 0)
    assert rep.events == 0
    if label is GroupLabel.KxK:
        assert rep.unreachable == rep.trials
    else:
        assert rep.unreachable == 0
        assert rep.max_magnitude >= 1e5


def test_falsification_finds_axn_events():
    rep = pr.falsify_properness("AxN", 20, 0)
    assert rep.ray_events == rep.ray_trials > 0


def test_gfn_rays_produce_no_events():
    rep = pr.falsify_properness("GFN", 20, 0)
    assert rep.events == 0


@pytest.mark.parametrize("label", ["AxK", "NxK", "KxK", "AffxI", "GFK"])
def test_proper_stabilizers_are_compact(label):
    scan = pr.stabilizer_scan(label, 100, 0, extra_points=(sl2.I2, -sl2.I2))
    assert scan["compact"]


def test_falsify_rejects_zero_trials():
    with pytest.raises(ValueError):
        pr.falsify_properness("AxK", 0, 0)


def test_certificate_descriptions_serialize():
    for label in NONPROPER_LABELS:
        d = pr.certificate(label).describe()
        assert d["group"] == label.value
