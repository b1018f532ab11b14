import pytest

from ads3 import survey
from ads3.classifier import orbit_id
from ads3.orbit_space import REPS


def test_axa_singular_ids():
    rep = survey.census("AxA", 2000, 0)
    assert survey.class_count(rep, "Singular") == 4
    assert rep["by_source"]["sample"] + rep["excluded_near_boundary"] == 2000
    assert rep["stratum_points"] == 200


def test_affxa_counts():
    rep = survey.census("AffxA", 2000, 0)
    assert survey.class_count(rep, "Exceptional") == 4
    assert survey.class_count(rep, "OpenOrbit") == 4


def test_worker_count_does_not_change_report():
    assert survey.census("GFN", 400, 3, workers=1) == survey.census("GFN", 400, 3, workers=2)


def test_seeded_points_are_reported():
    rep = survey.census("AffxN", 10, 0)
    assert set(rep["seeded"]) == set(survey.SEEDED_POINTS)
    assert rep["seeded"]["I"]["class"] == "Exceptional"


def test_distinct_ids_merge_same_orbit():
    ids = [orbit_id("AxA", REPS["I"]), orbit_id("AxA", REPS["I"]), orbit_id("AxA", REPS["J"])]
    assert len(survey.distinct_ids(ids)) == 2


def test_absent_class_counts_zero():
    rep = survey.census("AxK", 10, 0)
    assert survey.class_count(rep, "Singular") == 0
    assert survey.character_count(rep, "LorentzianSurface") >= 1


def test_rejects_zero_samples():
    with pytest.raises(ValueError):
        survey.census("AxK", 0, 0)
