import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ads3 import catalog, sl2
from ads3.catalog import GroupLabel, act, element, is_element, params_of, spec
from ads3.errors import ParamArity
from strategies import labels, points


def test_sixteen_labels_with_proper_split():
    assert len(catalog.catalog()) == 16
    assert set(catalog.PROPER_LABELS) == {GroupLabel.AxK, GroupLabel.NxK, GroupLabel.KxK,
                                          GroupLabel.AffxI, GroupLabel.GFK}
    assert len(catalog.NONPROPER_LABELS) == 11


@pytest.mark.parametrize("label", list(GroupLabel))
def test_bracket_closure(label):
    assert catalog.bracket_closure_check(label)


def test_gff_bracket_lands_in_span():
    (x, xx), (y, _) = spec("GFF").lie_basis[:2]
    assert np.allclose(sl2.bracket(x, y), 2 * y) and np.allclose(sl2.bracket(xx, np.zeros((2, 2))), 0)


@pytest.mark.parametrize("label", list(GroupLabel))
def test_flow_consistency(label):
    worst = max(catalog.flow_residual(label, sl2.sample_point([1, i])) for i in range(100))
    assert worst <= catalog.FLOW_TOL


def test_param_arity():
    with pytest.raises(ParamArity):
        element("AxK", (1.0,))


@given(labels, st.data())
def test_params_round_trip(label, data):
    k = spec(label).param_count
    x = [data.draw(st.floats(-2, 2)) for _ in range(k)]
    g = element(label, x)
    back = params_of(label, g)
    assert back is not None
    assert np.allclose(element(label, back).g1, g.g1, atol=1e-9)
    assert np.allclose(element(label, back).g2, g.g2, atol=1e-9)


@given(labels, points(), st.data())
def test_action_preserves_ads(label, p, data):
    k = spec(label).param_count
    g = element(label, [data.draw(st.floats(-1.5, 1.5)) for _ in range(k)])
    assert abs(sl2.det(act(g, p)) - 1.0) < 1e-9


def test_mixed_scale_pair_is_not_gfn_element():
    n = 3.0
    assert not is_element("GFN", catalog.IsometryPair(sl2.f_ts(n, 0.0), sl2.n_t(np.exp(n))))
    assert is_element("AxN", catalog.IsometryPair(sl2.a_t(n), sl2.n_t(np.exp(n))))
