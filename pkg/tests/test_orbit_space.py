import numpy as np
import pytest

from ads3 import orbit_space as osp, sl2
from ads3.catalog import GroupLabel, PROPER_LABELS, act, element, spec
from ads3.errors import MalformedBasis
from ads3.orbit_space import ProperModel

CLOSURE_LABELS = [l for l in GroupLabel if osp.closure_catalog(l) is not None]


def test_proper_verdicts():
    models = {l: osp.quotient_verdict(l).proper_model for l in PROPER_LABELS}
    assert models == {
        GroupLabel.AxK: ProperModel.REAL_LINE, GroupLabel.NxK: ProperModel.REAL_LINE,
        GroupLabel.GFK: ProperModel.CIRCLE, GroupLabel.AffxI: ProperModel.CIRCLE,
        GroupLabel.KxK: ProperModel.HALF_LINE,
    }
    assert all(osp.quotient_verdict(l).hausdorff for l in PROPER_LABELS)


def test_nonproper_verdicts():
    for l in GroupLabel:
        if l in PROPER_LABELS:
            continue
        v = osp.quotient_verdict(l)
        assert not v.hausdorff and v.proper_model is None
        assert v.finite == (l in {GroupLabel.AffxA, GroupLabel.AffxN, GroupLabel.AffxAff})


@pytest.mark.parametrize("label, count, pair", [
    ("AffxA", 47, ("I", "J")),
    ("AffxN", 7, ("I", "-I")),
    ("AffxAff", 7, ("I", "-I")),
])
def test_finite_spaces(label, count, pair):
    t = osp.finite_space(label)
    rep = osp.topology_checks(t)
    assert rep.covers and rep.intersection_closed and rep.t0 and rep.distinct_ids
    assert not rep.hausdorff
    assert rep.open_set_count == count
    assert tuple(rep.non_hausdorff_witness) == pair
    # every open set around either witness point contains the common adherent point
    for b in t.basis:
        if t.index(pair[0]) in b or t.index(pair[1]) in b:
            assert t.index(rep.common_adherent) in b


def test_discrete_space_is_hausdorff():
    t = osp.make_topology(("a", "b"), ({"a"}, {"b"}))
    rep = osp.topology_checks(t)
    assert rep.hausdorff and rep.non_hausdorff_witness is None and rep.specialization == []


def test_malformed_and_noncovering_bases():
    assert not osp.topology_checks(osp.make_topology(("a", "b", "c"), ({"a"}, {"b"}))).covers
    with pytest.raises(MalformedBasis):
        osp.topology_checks(osp.make_topology(("a", "b", "c"), ({"a", "b"}, {"b", "c"})))


@pytest.mark.parametrize("label", CLOSURE_LABELS, ids=lambda l: l.value)
def test_closure_witnesses_verify(label):
    rel = osp.closure_catalog(label)
    for c in rel.pairs:
        chk = osp.check_pair(label, c, 25, 1e-6)
        assert chk.passed, (c.first, c.second, chk.problems)


@pytest.mark.parametrize("label", CLOSURE_LABELS, ids=lambda l: l.value)
def test_swapped_closures_fail(label):
    rel = osp.closure_catalog(label)
    for c in rel.pairs:
        if c.kind == "orbit":
            assert not osp.check_pair(label, osp.swapped(c), 25, 1e-6).passed, (c.first, c.second)


@pytest.mark.parametrize("label", ["AffxA", "AffxN", "AffxAff"])
def test_closure_matches_preorder(label):
    assert osp.closure_matches_topology(osp.closure_catalog(label), osp.finite_space(label))


def test_verify_closure_rejects_short_sequences():
    with pytest.raises(ValueError):
        osp.verify_closure(osp.closure_catalog("AxA"), n_max=4)


def test_act_mp_agrees_with_float():
    p = sl2.sample_point([1, 2])
    for label in GroupLabel:
        x = np.linspace(-0.7, 0.9, spec(label).param_count)
        np.testing.assert_allclose(osp.act_mp(label, x, p), act(element(label, x), p), atol=1e-12)


@pytest.mark.parametrize("label", PROPER_LABELS, ids=lambda l: l.value)
def test_model_invariant_parametrizes_quotient(label):
    rep = osp.model_check(label, 500, 0)
    assert rep["monotone"]
    if rep["model"] == "Circle":
        assert rep["transversal_span"] == pytest.approx(2 * np.pi)
    if rep["model"] == "HalfLine":
        assert rep["min"] >= 2.0 - 1e-9 and rep["transversal_range"][0] == pytest.approx(2.0)


def test_model_invariant_is_orbit_constant():
    rng = np.random.default_rng(4)
    for label in PROPER_LABELS:
        for _ in range(100):
            p = sl2.sample_point(rng)
            q = act(element(label, rng.uniform(-3, 3, spec(label).param_count)), p)
            a, b = osp.model_invariant(label, p), osp.model_invariant(label, q)
            if osp.quotient_verdict(label).proper_model is ProperModel.CIRCLE:
                d = (a - b) / (2 * np.pi)
                assert abs(d - round(d)) < 1e-8, label
            else:
                assert a == pytest.approx(b, rel=1e-8, abs=1e-8), label


def test_gfn_degenerate_orbits_are_separated():
    ends = osp.gfn_end_behaviour()
    assert ends["separated"]
    assert set(ends["I"]).isdisjoint(ends["-I"])
