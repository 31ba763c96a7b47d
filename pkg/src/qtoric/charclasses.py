"""Stiefel-Whitney and Pontryagin classes of the realized rings.

The total classes are the facet products prod(1 + v_i) over Z/2 and
prod(1 - v_i^2) over Z; in the three-generator presentation the same data is
written through the linear forms attached to the star-form rows.  Only the
degree-2 and degree-4 parts feed the homeomorphism criterion downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ringkit as rk
from .charmat import StarForm
from .errors import ValidationError


@dataclass(frozen=True)
class CharClassData:
    w2: rk.RingElement               # degree-2 part, in the mod-2 ring
    p1: rk.RingElement               # degree-4 part, over Z
    total_sw: dict                   # degree -> RingElement over Z/2
    total_pontryagin: dict           # degree -> RingElement over Z


def _total_product(ring, factors):
    """Reduce prod(1 + f) degreewise; factors are homogeneous polys."""
    g = ring.presentation.num_generators
    one = {tuple([0] * g): 1}
    acc = {0: dict(one)}
    for f in factors:
        d = rk.poly_degree(f)
        new = {}
        for deg, part in acc.items():
            new[deg] = rk.poly_add(new.get(deg, {}), part)
            if d is not None and deg + 2 * d <= ring.max_degree:
                prod = rk.poly_mul(part, f)
                new[deg + 2 * d] = rk.poly_add(new.get(deg + 2 * d, {}), prod)
        acc = new
    out = {}
    for deg in range(0, ring.max_degree + 1, 2):
        out[deg] = ring.reduce(acc.get(deg, {}), deg)
    return out


def _classes_from_linear_forms(ring, ring2, forms):
    """Class data from the degree-2 forms u_1..u_k: total SW = prod(1+u_i)
    mod 2, total Pontryagin = prod(1-u_i^2)."""
    sw = _total_product(ring2, forms)
    p_factors = [rk.poly_scale(rk.poly_mul(u, u), -1) for u in forms]
    pont = _total_product(ring, p_factors)
    if sw[0].coeffs != (1,) or pont[0].coeffs != (1,):
        raise ValidationError("degree-0 part of a total class must be 1")
    return CharClassData(w2=sw[2], p1=pont[4], total_sw=sw, total_pontryagin=pont)


def classes_full(P, lam, ring, ring2=None):
    """Characteristic class data in the full facet presentation.

    `ring` must be realized from full_presentation(P, lam); the mod-2 ring is
    realized independently unless supplied.
    """
    if ring.presentation.num_generators != P.num_facets:
        raise ValidationError("ring does not match the polytope's facet count")
    if ring.modulus != 0:
        raise ValidationError("integral ring required")
    if ring2 is None:
        ring2 = rk.realize(ring.presentation, ring.max_degree, modulus=2)
    m = P.num_facets
    forms = [rk.linear_poly(tuple(1 if j == i else 0 for j in range(m)))
             for i in range(m)]
    return _classes_from_linear_forms(ring, ring2, forms)


def classes_small(sf, ring=None, ring2=None):
    """Characteristic class data in the three-generator presentation: the six
    degree-2 forms are the three star-form rows and the generators themselves."""
    if ring is None:
        ring = rk.realize_star(sf)
    if ring2 is None:
        ring2 = rk.realize(ring.presentation, ring.max_degree, modulus=2)
    forms = [rk.linear_poly(row) for row in sf.right_rows()]
    forms += [rk.linear_poly(tuple(1 if j == i else 0 for j in range(3)))
              for i in range(3)]
    return _classes_from_linear_forms(ring, ring2, forms)


@dataclass(frozen=True, eq=False)
class ManifoldData:
    """A star form together with its realized rings and class data."""

    star: StarForm
    ring: rk.GradedRing
    ring2: rk.GradedRing
    classes: CharClassData


def manifold_data(sf):
    ring = rk.realize_star(sf)
    ring2 = rk.realize(ring.presentation, ring.max_degree, modulus=2)
    return ManifoldData(sf, ring, ring2, classes_small(sf, ring, ring2))


def full_manifold_data(lam):
    P = lam.polytope
    ring = rk.realize_full(P, lam)
    ring2 = rk.realize(ring.presentation, ring.max_degree, modulus=2)
    return ManifoldData(None, ring, ring2, classes_full(P, lam, ring, ring2))
