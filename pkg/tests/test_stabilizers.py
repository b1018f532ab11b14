import numpy as np
import pytest

from ads3 import engine, stabilizers as st
from ads3.catalog import act, element
from ads3.polynomials import PolyStatus


@pytest.mark.parametrize("fam", st.FAMILIES, ids=lambda f: f.key)
def test_exact_families_fix_their_points(fam):
    assert st.exact_fixes(fam)


@pytest.mark.parametrize("fam", [f for f in st.FAMILIES if f.status is PolyStatus.MATCH], ids=lambda f: f.key)
def test_matching_printed_families_fix_their_points(fam):
    assert st.printed_fixes(fam)


def test_gfa_printed_sign_is_reversed():
    fam = st.family("GFA")
    assert fam.status is PolyStatus.CORRECTED
    assert st.check_family(fam, 10, 0, "printed") > 1.0
    p = fam.sample_base(np.random.default_rng(3))
    for t in (-1.0, 0.5, 2.0):
        (_, s_printed), (_, s_exact) = fam.printed(p, t), fam.exact(p, t)
        assert s_printed == pytest.approx(-s_exact)


@pytest.mark.parametrize("fam", st.FAMILIES, ids=lambda f: f.key)
def test_family_dimension_matches_engine(fam):
    p = fam.sample_base(np.random.default_rng(11))
    assert len(engine.stabilizer_algebra(fam.label, p)) == fam.free


def test_base_point_changes_break_fixation():
    fam = st.family("NxN")
    p = fam.sample_base(np.random.default_rng(0))
    q = p.copy()
    q[0, 0] *= 2.0
    q[1, 1] /= 2.0
    moved = act(element(fam.label, fam.exact(q, 1.0)), p)
    assert np.max(np.abs(moved - p)) > 1e-3


def test_table_rows():
    rows = st.stabilizer_table(bases=3)
    assert [r["family"] for r in rows] == [f.key for f in st.FAMILIES]
    for r in rows:
        assert r["exact_residual"] <= st.FIX_TOL


def test_unknown_family():
    with pytest.raises(KeyError):
        st.family("nope")
