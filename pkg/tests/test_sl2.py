import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ads3 import sl2
from ads3.errors import NonPositiveDeterminant
from strategies import points


def test_basis_forms():
    assert sl2.q_form(sl2.Z) == -1.0
    assert sl2.q_form(sl2.I2) == -1.0
    assert sl2.b_form(sl2.X, sl2.Z) == 0.0
    assert sl2.b_form(sl2.Y, sl2.Y) == 0.0


def test_bilinear_polarizes_quadratic():
    rng = np.random.default_rng(0)
    for _ in range(50):
        u, v = rng.normal(size=(2, 2, 2))
        assert sl2.q_form(u + v) - sl2.q_form(u) - sl2.q_form(v) == pytest.approx(2 * sl2.b_form(u, v), abs=1e-12)


def test_exp_matches_frozen_oracle(frozen):
    for row in frozen["exp"]:
        t = row["t"]
        for m, key in ((sl2.X, "A"), (sl2.Y, "N"), (sl2.Z, "K")):
            got = sl2.exp_traceless(t * m).ravel()
            assert np.max(np.abs(got - row[key]) / np.maximum(1.0, np.abs(row[key]))) < 1e-13


def test_exp_small_entries_keep_relative_accuracy():
    # the e^-t diagonal entry must not cancel
    for t in (8.0, 10.0, 15.0):
        got = sl2.exp_traceless(t * sl2.X)[1, 1]
        assert got == pytest.approx(math.exp(-t), rel=1e-13)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_exp_inverse_and_det(a, b, c):
    m = np.array([[a, b], [c, -a]])
    e = sl2.exp_traceless(m)
    assert abs(sl2.det(e) - 1.0) < 1e-9 * max(1.0, float(np.max(np.abs(e))) ** 2)
    prod = e @ sl2.exp_traceless(-m)
    assert np.max(np.abs(prod - np.eye(2))) < 1e-9 * max(1.0, float(np.max(np.abs(e))) ** 2)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_exp_agrees_with_series(a, b, c):
    m = np.array([[a, b], [c, -a]])
    series, term = np.eye(2), np.eye(2)
    for k in range(1, 60):
        term = term @ m / k
        series = series + term
    assert np.max(np.abs(sl2.exp_traceless(m) - series)) < 1e-11 * max(1.0, float(np.max(np.abs(series))))


def test_element_classes():
    assert sl2.element_class(sl2.a_t(1.0)) is sl2.ElementClass.HYPERBOLIC
    assert sl2.element_class(sl2.k_t(0.5)) is sl2.ElementClass.ELLIPTIC
    assert sl2.element_class(sl2.n_t(1.0)) is sl2.ElementClass.PARABOLIC
    assert sl2.element_class(-sl2.I2) is sl2.ElementClass.CENTRAL


def test_projection():
    p = sl2.project_to_ads(np.array([[2.0, 0.0], [0.0, 2.0]]))
    assert sl2.det(p) == pytest.approx(1.0)
    with pytest.raises(NonPositiveDeterminant):
        sl2.project_to_ads(np.array([[1.0, 0.0], [0.0, -1.0]]))


def test_sampling_is_deterministic_and_on_ads():
    a, b = sl2.sample_point([3, 4]), sl2.sample_point([3, 4])
    assert np.array_equal(a, b)
    for i in range(100):
        assert abs(sl2.det(sl2.sample_point([0, i])) - 1.0) < 1e-12
        s = sl2.sample_stratum_point([0, i])
        assert abs(sl2.det(s) - 1.0) < 1e-12
        assert s[1, 0] == 0.0 or s[0, 0] == 0.0


@given(points())
def test_iwasawa_points_have_unit_det(p):
    assert abs(sl2.det(p) - 1.0) < 1e-12
