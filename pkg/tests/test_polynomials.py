import numpy as np
import pytest
from hypothesis import given

from ads3 import polynomials as poly
from ads3.catalog import GroupLabel
from ads3.polynomials import PolyStatus

from conftest import frac, point
from strategies import labels, points


def _direction(row):
    return tuple(frac(x) for x in row["direction"])


def test_exact_forms_match_frozen_generic_values(frozen):
    for label, rows in frozen["direction_q"].items():
        dp = poly.direction_polynomial(label)
        for row in rows:
            p = point(frozen, row["point"])
            got = dp.exact(p, _direction(row))
            assert got == pytest.approx(frac(row["generic"]), rel=1e-12, abs=1e-12), (label, row)


def test_printed_forms_match_frozen_printed_values(frozen):
    for label, rows in frozen["direction_q"].items():
        dp = poly.direction_polynomial(label)
        for row in rows:
            if row.get("printed") is None:
                assert dp.printed is None
                continue
            got = dp.printed(point(frozen, row["point"]), _direction(row))
            assert got == pytest.approx(frac(row["printed"]), rel=1e-12, abs=1e-12), (label, row)


def test_status_agrees_with_oracle(frozen):
    """MATCH labels agree with the oracle's generic value; CORRECTED labels do not somewhere."""
    for label, rows in frozen["direction_q"].items():
        dp = poly.direction_polynomial(label)
        differs = any(row.get("printed") is not None and row["printed"] != row["generic"] for row in rows)
        if dp.status is PolyStatus.MATCH:
            assert not differs, label
        elif dp.status is PolyStatus.CORRECTED:
            assert differs and dp.note, label
        else:
            assert dp.printed is None and dp.note, label


def test_corrected_labels():
    corrected = {lab for lab in GroupLabel if poly.direction_polynomial(lab).status is PolyStatus.CORRECTED}
    assert corrected == {GroupLabel.GFK, GroupLabel.GFF}


@given(labels, points())
def test_exact_form_matches_tangent_q(label, p):
    rng = np.random.default_rng(abs(hash((label.value, float(p[0, 0])))) % 2**32)
    c = poly.sample_directions(label, rng)
    assert poly.identity_errors(label, p, c)["exact"] <= 1e-9


def test_relative_error_is_scale_aware():
    assert poly.relative_error(1e6, 1e6 + 1) == pytest.approx(1e-6, rel=1e-6)
    assert poly.relative_error(0.0, 1e-10) == pytest.approx(1e-10)
