import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ads3 import engine, sl2
from ads3.catalog import GroupLabel, act, element, spec
from ads3.engine import CausalCharacter as CC
from ads3.errors import DimensionOutOfRange
from conftest import point
from strategies import labels, points


def test_characters_match_exact_oracle(frozen):
    for label, rows in frozen["characters"].items():
        for name, (dim, char) in rows.items():
            p = point(frozen, name)
            assert engine.orbit_dimension(label, p) == dim, (label, name)
            assert engine.causal_character(label, p).value == char, (label, name)


def test_stabilizer_dims_match_exact_oracle(frozen):
    for label, rows in frozen["stabilizer_dim"].items():
        for name, k in rows.items():
            assert len(engine.stabilizer_algebra(label, point(frozen, name))) == k, (label, name)


def test_named_examples():
    assert engine.causal_character("AxK", sl2.I2) is CC.LORENTZIAN_SURFACE
    assert engine.causal_character("NxN", sl2.mat(2, 1, 0, 0.5)) is CC.LIGHTLIKE_CURVE
    assert engine.causal_character("DiagSL2", sl2.k_t(np.pi / 3)) is CC.SPACELIKE_SURFACE
    assert engine.sweep_character("AxA", sl2.mat(1, 1, -0.5, 0.5)) is CC.SPACELIKE_SURFACE
    assert engine.sweep_character("AxN", sl2.I2 + sl2.E21) is CC.LORENTZIAN_SURFACE


def _parallel(a, b):
    return abs(abs(float(np.sum(a * b))) - np.linalg.norm(a) * np.linalg.norm(b)) < 1e-12


def test_stabilizer_directions_at_identity():
    (v, w), = engine.stabilizer_algebra("KxK", sl2.I2)
    assert np.allclose(v, w) and _parallel(v, sl2.Z)
    (v, w), = engine.stabilizer_algebra("AxA", sl2.I2)
    assert np.allclose(v, w) and _parallel(v, sl2.X)
    (v, w), = engine.stabilizer_algebra("NxN", sl2.I2)
    assert np.allclose(v, w) and _parallel(v, sl2.Y)


def test_gram_form_rejects_open_orbits():
    with pytest.raises(DimensionOutOfRange):
        engine.gram_form("AffxA", sl2.I2 + sl2.E21)


@pytest.mark.parametrize("label", list(GroupLabel))
def test_sweep_agrees_with_gram(label):
    for i in range(150):
        p = sl2.sample_point([2, i])
        assert engine.sweep_character(label, p) is engine.causal_character(label, p)


@given(labels, points())
def test_tangency_and_rank_nullity(label, p):
    for v in engine.tangent_basis(label, p):
        assert abs(np.trace(sl2.adj(p) @ v)) < 1e-12 * max(1.0, float(np.max(np.abs(v))))
    assert engine.orbit_dimension(label, p) + len(engine.stabilizer_algebra(label, p)) == spec(label).dim


@settings(max_examples=40)
@given(labels, points(), st.data())
def test_character_is_orbit_constant(label, p, data):
    k = spec(label).param_count
    g = element(label, [data.draw(st.floats(-1.0, 1.0)) for _ in range(k)])
    q = act(g, p)
    from ads3.classifier import boundary_distance
    if min(boundary_distance(label, p), boundary_distance(label, q)) < 1e-6:
        return
    assert engine.causal_character(label, p) is engine.causal_character(label, q)


@given(labels, points())
def test_stabilizer_exponentiates(label, p):
    for v, w in engine.stabilizer_algebra(label, p):
        for t in (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0):
            q = sl2.exp_traceless(t * v) @ p @ sl2.exp_traceless(-t * w)
            assert np.max(np.abs(q - p)) <= 1e-8
