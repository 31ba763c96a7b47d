"""Regression pins for the bound-2 orbit census and orbit closure.

The golden table below was cross-checked during development against a naive
pairwise orbit-equality oracle (sympy-based renormalization, no lex-min);
it pins canonical representatives, family tags, full orbit sizes and the
in-bound member counts.
"""

from qtoric import charmat as cm
from qtoric import verify


GOLDEN_CENSUS_B2 = [
    ((-6, 0, -4, 0, 1, 2), "A2", 96, 24),
    ((-6, 0, -2, -1, 0, 2), "A3", 96, 24),
    ((-6, 0, -2, 0, 0, 2), "A1", 48, 24),
    ((-5, 0, -3, 0, 1, 2), "A2", 96, 24),
    ((-5, 0, -2, -1, 0, 2), "A3", 96, 24),
    ((-5, 0, -2, 0, 0, 2), "A1", 48, 24),
    ((-4, 0, -3, 0, 1, 2), "A2", 96, 24),
    ((-4, 0, -2, -1, 0, 1), "A3", 96, 24),
    ((-4, 0, -2, -1, 0, 2), "A3", 48, 24),
    ((-4, 0, -2, -1, 1, 2), "Chi(6)", 48, 24),
    ((-4, 0, -2, 0, 0, 1), "A1", 48, 24),
    ((-4, 0, -2, 0, 0, 2), "A1", 48, 24),
    ((-4, 0, -2, 0, 1, 2), "A2", 48, 24),
    ((-4, 0, -1, 0, 0, 2), "A1", 48, 24),
    ((-3, 0, -2, -1, 0, 1), "A3", 96, 48),
    ((-3, 0, -2, 0, 0, 1), "A1", 48, 24),
    ((-3, 0, -2, 0, 0, 2), "A1", 48, 24),
    ((-3, 0, -2, 0, 1, 2), "A2", 96, 48),
    ((-3, 0, -1, 0, 0, 1), "A1", 48, 24),
    ((-3, 0, -1, 0, 0, 2), "A1", 48, 24),
    ((-2, -1, -2, -1, 0, 1), "Chi(1)", 192, 192),
    ((-2, -1, -2, -1, 0, 2), "Chi(5)", 24, 24),
    ((-2, -1, -2, 0, 0, 0), "A3", 48, 48),
    ((-2, -1, -2, 0, 1, 0), "A3", 48, 48),
    ((-2, -1, -2, 0, 1, 2), "Chi(10)", 24, 24),
    ((-2, -1, -1, 0, 0, 0), "A3", 48, 48),
    ((-2, -1, 0, -2, 0, 2), "A2", 48, 48),
    ((-2, -1, 0, -1, 0, 0), "A2", 48, 48),
    ((-2, -1, 0, -1, 0, 1), "A2", 48, 48),
    ((-2, -1, 0, 0, 0, 0), "A3", 12, 12),
    ((-2, 0, -2, 0, 0, 0), "A1", 12, 12),
    ((-2, 0, -2, 0, 0, 1), "A1", 48, 48),
    ((-2, 0, -2, 0, 0, 2), "A1", 24, 24),
    ((-2, 0, -1, 0, 0, 0), "A1", 24, 24),
    ((-2, 0, -1, 0, 0, 1), "A1", 48, 48),
    ((-2, 0, -1, 0, 0, 2), "A1", 48, 48),
    ((-2, 0, -1, 0, 1, 0), "A1", 24, 24),
    ((-2, 0, 0, -1, 0, 1), "A1", 24, 24),
    ((-2, 0, 0, 0, 0, -2), "A1", 12, 12),
    ((-2, 0, 0, 0, 0, -1), "A1", 24, 24),
    ((-2, 0, 0, 0, 0, 0), "A1", 12, 12),
    ((-1, 0, -1, 0, 0, 0), "A1", 12, 12),
    ((-1, 0, -1, 0, 0, 1), "A1", 48, 48),
    ((-1, 0, 0, 0, 0, -1), "A1", 12, 12),
    ((-1, 0, 0, 0, 0, 0), "A1", 12, 12),
    ((0, 0, 0, 0, 0, 0), "A1", 1, 1),
]


def test_census_matches_golden_table():
    report = verify.classify_cube(2)
    got = [(tuple(c["canonical"]), c["family"], c["orbit_size"], c["members_in_bound"])
           for c in report["classes"]]
    assert got == GOLDEN_CENSUS_B2
    assert sum(row[3] for row in GOLDEN_CENSUS_B2) == report["valid"] == 1453


def test_orbits_closed_under_every_generator_exhaustive_bound2():
    """Every single move applied to any in-bound valid form stays inside the
    form's computed orbit (orbit closure, checked exhaustively at bound 2)."""
    gens = [cm.named_generator(g).images for g in ("s1", "s2", "s3", "t1", "t2", "t3")]
    assigned = {}
    orbits = {}
    for sf in cm.enumerate_star(2):
        t = sf.as_tuple()
        if not cm.is_valid_star(t) or t in assigned:
            continue
        orbit = cm.star_orbit(t)
        key = orbit[0]
        orbits[key] = set(orbit)
        for member in orbit:
            assigned[member] = key
    checked = 0
    for t, key in list(assigned.items()):
        if not all(abs(v) <= 2 for v in t):
            continue
        mat = [list(r) for r in cm.StarForm.from_tuple(t).to_matrix().entries]
        for images in gens:
            moved = cm._renormalize(cm._apply_perm(mat, images))
            assert moved in orbits[key], (t, images)
            checked += 1
    assert checked >= 6 * 1453
