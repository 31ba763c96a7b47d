import json

import pytest

from qtoric import charmat as cm
from qtoric import verify
from qtoric.errors import CapabilityError

from oracles import admissible_tuples, naive_star_orbit, star_is_characteristic


def test_classify_bound_zero():
    report = verify.classify_cube(0)
    assert report["pass"]
    assert report["enumerated"] == 1
    assert len(report["classes"]) == 1
    assert report["classes"][0]["family"] == "A1"


def test_classify_bound_one_census():
    report = verify.classify_cube(1)
    assert report["pass"]
    assert report["enumerated"] == 125
    assert report["valid"] == 109
    assert len(report["classes"]) == 6
    assert {c["family"] for c in report["classes"]} == {"A1"}


def test_classify_respects_cap():
    with pytest.raises(CapabilityError):
        verify.classify_cube(5)
    report = verify.classify_cube(0, max_bound=0)
    assert report["pass"]


def test_classify_class_count_matches_naive_orbit_oracle():
    """Golden census at bound 1 recomputed with the naive pairwise oracle."""
    aut = cm.cube_automorphisms()
    valid = [t for t in admissible_tuples(1) if star_is_characteristic(t)]
    classes = []
    seen = set()
    for t in valid:
        if t in seen:
            continue
        orbit = naive_star_orbit(t, aut)
        seen |= {m for m in orbit if m in set(valid)}
        classes.append(orbit)
    assert len(classes) == 6
    report = verify.classify_cube(1)
    assert len(report["classes"]) == len(classes)
    canon_keys = {min(o) for o in classes}
    assert {tuple(c["canonical"]) for c in report["classes"]} == canon_keys


def test_strata_report():
    report = verify.verify_strata(2)
    assert report["pass"]
    ids = {v["id"] for v in report["verdicts"]}
    assert "c222-single-class" in ids
    assert "c022-orbit-structure" in ids
    assert sum(1 for v in report["verdicts"] if v["id"].startswith("diagram-edge")) == 14
    claims = next(v for v in report["verdicts"] if v["id"] == "c222-move-claims")
    assert claims["witness"]["s3-first-to-second"] is True
    # the composite claim holds in exactly one reading, onto the third matrix
    readings = claims["witness"]["composite_readings"]
    assert readings["s2-then-s1 -> third"] is True
    assert readings["s1-then-s2 -> second"] is False


def test_families_report():
    report = verify.verify_families(bound=3, samples=5, seed=11)
    assert report["pass"]
    assert report["seed"] == 11
    theta = next(v for v in report["verdicts"] if v["id"] == "theta-blocks-complete-at-8")
    assert theta["witness"]["count"] == 8


def test_rigidity_report_small():
    report = verify.verify_rigidity_partition(samples=4, bound=2, seed=3)
    assert report["pass"]
    ids = {v["id"] for v in report["verdicts"]}
    assert "nilsquare-separates-families" in ids
    assert "no-iso-between-a1-and-a3" in ids


def test_run_suite_dispatch_and_determinism():
    a = verify.run_suite("families", bound=2, samples=4, seed=5)
    b = verify.run_suite("families", bound=2, samples=4, seed=5)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    with pytest.raises(CapabilityError):
        verify.run_suite("nonsense")


def test_verdicts_carry_witnesses():
    report = verify.verify_strata(1)
    for v in report["verdicts"]:
        assert isinstance(v["witness"], dict)
        json.dumps(v["witness"])  # must be serializable
