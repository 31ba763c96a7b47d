import random

from qtoric import charmat as cm
from qtoric import polytope as poly
from qtoric import ringkit as rk
from qtoric.charclasses import classes_full, full_manifold_data, manifold_data

from oracles import admissible_tuples, star_is_characteristic


def test_w2_formula_lambda_family():
    # total degree-2 form is 2X + (s+3)Y + (t+4)Z, so mod 2: (s+1)Y + tZ
    for s, t in [(0, 0), (1, 1), (2, -3), (-4, 5)]:
        data = manifold_data(cm.lambda_st(s, t))
        assert data.classes.w2.coeffs == (0, (s + 1) % 2, t % 2), (s, t)


def test_w2_formula_colambda_family():
    # total degree-2 form is (s+t+2)X + 3Y + 4Z, so mod 2: (s+t)X + Y
    for s, t in [(0, 0), (1, 1), (2, -3), (-4, 5)]:
        data = manifold_data(cm.colambda_st(s, t))
        assert data.classes.w2.coeffs == ((s + t) % 2, 1, 0), (s, t)


def test_p1_vanishes_for_sphere_cube():
    data = manifold_data(cm.StarForm((0, 0, 0), (0, 0, 0)))
    assert data.classes.p1.is_zero()


def test_degree_zero_parts_are_one():
    data = manifold_data(cm.lambda_st(2, 1))
    assert data.classes.total_sw[0].coeffs == (1,)
    assert data.classes.total_pontryagin[0].coeffs == (1,)


def test_w2_depends_only_on_matrix_mod_two():
    rng = random.Random(77)
    for _ in range(10):
        s, t = rng.randint(-4, 4), rng.randint(-4, 4)
        a = manifold_data(cm.lambda_st(s, t))
        b = manifold_data(cm.lambda_st(s + 2 * rng.randint(-2, 2),
                                       t + 2 * rng.randint(-2, 2)))
        assert a.classes.w2.coeffs == b.classes.w2.coeffs


def test_full_matches_small_presentation():
    pool = [t for t in admissible_tuples(3) if star_is_characteristic(t)]
    rng = random.Random(13)
    picks = [pool[rng.randrange(len(pool))] for _ in range(8)]
    picks += [cm.lambda_st(0, 0).as_tuple(), cm.CHI[6]]
    for t in picks:
        sf = cm.StarForm.from_tuple(t)
        small = manifold_data(sf)
        full = full_manifold_data(sf.to_matrix())
        assert full.ring.survivors == (3, 4, 5)
        assert full.classes.w2.coeffs == small.classes.w2.coeffs, t
        assert full.classes.p1.coeffs == small.classes.p1.coeffs, t
        for d in (2, 4, 6):
            assert full.classes.total_sw[d].coeffs == small.classes.total_sw[d].coeffs
            assert (full.classes.total_pontryagin[d].coeffs
                    == small.classes.total_pontryagin[d].coeffs)


def test_classes_full_validates_ring():
    import pytest
    from qtoric.errors import ValidationError

    lam = cm.lambda_st(1, 1).to_matrix()
    small_ring = rk.realize_star(cm.lambda_st(1, 1))
    with pytest.raises(ValidationError):
        classes_full(poly.cube(), lam, small_ring)
