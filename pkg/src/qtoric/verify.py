"""Machine-checked reports: classification census, move-diagram checks,
automorphism/isomorphism structure, and the rigidity partition.

Every verdict is deterministic given (bound, samples, seed) and carries a
reproducible witness; universal statements are only ever reported as checked
at the stated scale, never as proved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import charmat as cm
from . import isokit as ik
from . import ringkit as rk
from .charclasses import manifold_data
from .errors import CapabilityError

CLASSIFY_MAX_BOUND = 4
DEFAULT_CLASSIFY_BOUND = 2
DEFAULT_ISO_BOUND = 3
DEFAULT_SAMPLES = 20
DEFAULT_SEED = 7
SAMPLE_RANGE = 5

ALLOWED_CLASS_TAGS = {"A1", "A2", "A3", "Chi(1)", "Chi(5)", "Chi(6)", "Chi(10)"}

# the labeled edges of the move diagram; composite labels list the right
# factor first (the factor applied first)
DIAGRAM_EDGES = (
    ("chi1", ("t3",), "gamma3"),
    ("chi1", ("t2",), "gamma4"),
    ("chi1", ("t1",), "gamma1"),
    ("gamma1", ("t3",), "gamma5"),
    ("gamma1", ("t2",), "gamma2"),
    ("gamma2", ("s1",), "chi3"),
    ("chi4", ("t1",), "gamma6"),
    ("chi6", ("t3",), "gamma7"),
    ("gamma3", ("s3",), "chi7"),
    ("gamma4", ("t3",), "chi11"),
    ("gamma4", ("s1",), "chi9"),
    ("gamma5", ("s2", "s3"), "chi2"),
    ("gamma6", ("s1", "s3"), "chi3"),
    ("gamma7", ("s1",), "chi8"),
)

IDENTITY_PAIR = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((-1, 0, 0), (0, -1, 0), (0, 0, -1)),
)


@dataclass
class Verdict:
    id: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"id": self.id, "pass": self.passed, "witness": self.witness}


def _report(suite, verdicts, **params):
    verdicts = sorted(verdicts, key=lambda v: v.id)
    return {
        "suite": suite,
        **params,
        "verdicts": [v.to_json() for v in verdicts],
        "pass": all(v.passed for v in verdicts),
    }


# --- classification ----------------------------------------------------------


def classify_cube(bound=DEFAULT_CLASSIFY_BOUND, jobs=None, max_bound=None):
    """Census of star-form classes within the bound, each tagged by family.

    Enumerates the block-admissible forms, keeps the characteristic ones,
    groups them into full orbits under the symmetry action, and tags every
    class; the verdict asserts the four-family coverage.
    """
    cap = CLASSIFY_MAX_BOUND if max_bound is None else max_bound
    if bound > cap:
        raise CapabilityError(
            f"classification bound capped at {cap} (got {bound})")
    enumerated = 0
    valid = []
    for sf in cm.enumerate_star(bound):
        enumerated += 1
        if cm.is_valid_star(sf):
            valid.append(sf.as_tuple())
    assigned = {}
    classes = {}
    for t in valid:
        if t in assigned:
            continue
        orbit = cm.star_orbit(t)
        key = orbit[0]
        classes[key] = orbit
        for member in orbit:
            assigned[member] = key
    rows = []
    bad = []
    for key in sorted(classes):
        orbit = classes[key]
        tag = str(cm.class_family(orbit))
        members = sum(1 for t in valid if assigned[t] == key)
        rows.append({
            "canonical": list(key),
            "family": tag,
            "orbit_size": len(orbit),
            "members_in_bound": members,
        })
        if tag not in ALLOWED_CLASS_TAGS:
            bad.append({"canonical": list(key), "family": tag})
    verdict = Verdict(
        "classification-four-families",
        not bad,
        {"exceptions": bad, "classes": len(classes)},
    )
    return {
        "suite": "classify",
        "bound": bound,
        "enumerated": enumerated,
        "valid": len(valid),
        "classes": rows,
        "verdicts": [verdict.to_json()],
        "pass": verdict.passed,
    }


# --- stratum and move-diagram checks ------------------------------------------


def _move_star(t, gens):
    base = [list(r) for r in cm.StarForm.from_tuple(t).to_matrix().entries]
    for g in gens:
        base = cm._apply_perm(base, cm.named_generator(g).images)
    return cm._renormalize(base)


def _rho_equal(t1, t2):
    return tuple(t2) in cm._sign_variants(tuple(t1))


def _diagram_verdicts():
    out = []
    for src, moves, dst in DIAGRAM_EDGES:
        s = cm.named_star(src).as_tuple()
        d = cm.named_star(dst).as_tuple()
        stated = _rho_equal(_move_star(s, moves), d)
        reversed_ok = (len(moves) > 1
                       and _rho_equal(_move_star(s, tuple(reversed(moves))), d))
        same_class = cm.canonical_tuple(s) == cm.canonical_tuple(d)
        passed = same_class and (stated or reversed_ok)
        witness = {"source": src, "target": dst, "moves": list(moves),
                   "stated_move_matches": stated, "same_class": same_class}
        if not stated and reversed_ok:
            witness["flag"] = "class equality realized by the reversed composite"
        elif not stated and same_class:
            witness["flag"] = "class equality realized by a different group element"
        out.append(Verdict(f"diagram-edge-{src}-{dst}", passed, witness))
    return out


def _c222_verdicts():
    out = []
    c2 = [(2, 1), (1, 2), (-2, -1), (-1, -2)]
    positive = []
    all_valid = []
    constraint_values = set()
    for x2, y2 in c2:
        for x3, y3 in c2:
            t = (2, 1, x2, y2, x3, y3)
            if not cm.is_valid_star(t):
                continue
            all_valid.append(t)
            constraint_values.add(2 * y2 * x3 + x2 * y3)
            if x2 > 0 and y2 > 0:
                positive.append(t)
    expected = [(2, 1, 1, 2, 1, 2), (2, 1, 2, 1, 1, 2), (2, 1, 2, 1, 2, 1)]
    out.append(Verdict(
        "c222-normalized-enumeration",
        sorted(positive) == expected,
        {"found": [list(t) for t in sorted(positive)]},
    ))
    out.append(Verdict(
        "c222-minor-constraint",
        constraint_values <= {4, 6},
        {"values": sorted(constraint_values)},
    ))
    chi11_canon = cm.canonical_tuple(cm.CHI[11])
    merged = all(cm.canonical_tuple(t) == chi11_canon for t in all_valid)
    out.append(Verdict("c222-single-class", merged,
                       {"members": len(all_valid)}))

    # the two stated moves between the three normalized representatives
    l1, l2, l3 = (2, 1, 2, 1, 2, 1), (2, 1, 2, 1, 1, 2), (2, 1, 1, 2, 1, 2)
    move_a = _rho_equal(_move_star(l1, ("s3",)), l2)
    readings = {
        "s2-then-s1 -> second": _rho_equal(_move_star(l1, ("s2", "s1")), l2),
        "s2-then-s1 -> third": _rho_equal(_move_star(l1, ("s2", "s1")), l3),
        "s1-then-s2 -> second": _rho_equal(_move_star(l1, ("s1", "s2")), l2),
        "s1-then-s2 -> third": _rho_equal(_move_star(l1, ("s1", "s2")), l3),
    }
    out.append(Verdict(
        "c222-move-claims",
        move_a and any(readings.values()),
        {"s3-first-to-second": move_a, "composite_readings": readings},
    ))
    return out


def _c022_verdicts(bound):
    reps = {k: cm.canonical_tuple(cm.CHI[k]) for k in range(4, 11)}
    rep_set = set(reps.values())
    stray = []
    count = 0
    for sf in cm.enumerate_star(bound):
        t = sf.as_tuple()
        if not cm.is_valid_star(t):
            continue
        if cm._safe_label(t) != (0, 2, 2):
            continue
        count += 1
        if cm.canonical_tuple(t) not in rep_set:
            stray.append(list(t))
    partition = {}
    for k, canon in reps.items():
        partition.setdefault(canon, []).append(k)
    observed = sorted(sorted(v) for v in partition.values())
    expected = sorted([[4, 7, 9], [5], [6, 8], [10]])
    ok = (not stray) and observed == expected
    return [Verdict(
        "c022-orbit-structure",
        ok,
        {"members_checked": count, "stray": stray, "groups": observed},
    )]


def _label_action_verdict(bound):
    """The three pair-swapping symmetries permute the (e1,e2,e3) labels."""
    expect = {"s1": (0, 2, 1), "s2": (2, 1, 0), "s3": (1, 0, 2)}
    bad = []
    for sf in cm.enumerate_star(min(bound, 1)):
        t = sf.as_tuple()
        if not cm.is_valid_star(t):
            continue
        lab = cm._safe_label(t)
        for g, perm in expect.items():
            moved = cm._safe_label(_move_star(t, (g,)))
            if moved != tuple(lab[i] for i in perm):
                bad.append({"form": list(t), "move": g})
    return Verdict("label-swap-action", not bad, {"exceptions": bad})


def _first_restriction_verdict(bound):
    buckets = {(0, 0, 0), (0, 0, 2), (0, 2, 2), (2, 2, 2)}
    bad = []
    assigned = {}
    for sf in cm.enumerate_star(bound):
        t = sf.as_tuple()
        if not cm.is_valid_star(t) or t in assigned:
            continue
        orbit = cm.star_orbit(t)
        ok = any(cm._safe_label(m) in buckets for m in orbit)
        for m in orbit:
            assigned[m] = ok
        if not ok:
            bad.append(list(t))
    return Verdict("every-class-meets-sorted-label", not bad, {"exceptions": bad})


def verify_strata(bound=DEFAULT_CLASSIFY_BOUND):
    verdicts = []
    verdicts += _diagram_verdicts()
    verdicts += _c222_verdicts()
    verdicts += _c022_verdicts(bound)
    verdicts.append(_label_action_verdict(bound))
    verdicts.append(_first_restriction_verdict(bound))
    return _report("strata", verdicts, bound=bound)


# --- family structure ---------------------------------------------------------


def _family_automorphism_six(s, t):
    a = ((1, 0, t - s), (0, 1, 2), (0, 0, -1))
    b = ((-1, -s, -s), (0, 1, 2), (0, 0, -1))
    maps = []
    for m in (a, b):
        maps.append(ik.ring_map(m))
        maps.append(-ik.ring_map(m))
    maps.extend(ik.ring_map(m) for m in IDENTITY_PAIR)
    return maps


def _sample_pairs(rng, n, exclude_zero=False):
    out = []
    while len(out) < n:
        s = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
        t = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
        if exclude_zero and (s, t) == (0, 0):
            continue
        if (s, t) not in out:
            out.append((s, t))
    return out


def verify_families(bound=DEFAULT_ISO_BOUND, samples=10, seed=DEFAULT_SEED, jobs=None):
    rng = random.Random(seed)
    verdicts = []

    sols = ik.theta_solutions(8)
    expected = sorted(list(ik.THETAS) + [tuple(tuple(-x for x in r) for r in th)
                                         for th in ik.THETAS])
    verdicts.append(Verdict(
        "theta-blocks-complete-at-8",
        sols == expected,
        {"count": len(sols), "solutions": [[list(r) for r in s] for s in sols]},
    ))

    chi1 = manifold_data(cm.named_star("chi1"))
    auts = ik.automorphisms(chi1.ring, bound, jobs)
    only_pm_id = sorted(L.rows for L in auts) == sorted(
        [ik.IDENTITY.rows, (-ik.IDENTITY).rows])
    mod2_identity = all(
        tuple(tuple(x % 2 for x in r) for r in L.rows) == ik.IDENTITY.rows
        for L in auts)
    verdicts.append(Verdict(
        "chi1-automorphisms-pm-identity",
        only_pm_id and mod2_identity,
        {"bound": bound, "found": [L.as_list() for L in auts]},
    ))

    bad = []
    pairs = _sample_pairs(rng, samples, exclude_zero=True)
    for s, t in pairs:
        data = manifold_data(cm.lambda_st(s, t))
        maps = _family_automorphism_six(s, t)
        if len({L.rows for L in maps}) != 6:
            bad.append({"s": s, "t": t, "reason": "maps not distinct"})
            continue
        for L in maps:
            if not ik.is_isomorphism(L, data.ring, data.ring):
                bad.append({"s": s, "t": t, "map": L.as_list()})
    verdicts.append(Verdict(
        "lambda-family-six-automorphisms",
        not bad,
        {"samples": pairs, "exceptions": bad},
    ))

    struct_bad = []
    # self-pairs guarantee the structure checks see maps (the automorphism
    # group of every family member has at least six elements)
    iso_pairs = [(p, p) for p in pairs[:3]]
    iso_pairs += [(rng.choice(pairs), rng.choice(pairs)) for _ in range(min(samples, 6))]
    for (s, t), (x, y) in iso_pairs:
        src = manifold_data(cm.lambda_st(s, t))
        dst = manifold_data(cm.lambda_st(x, y))
        for L in ik.find_isomorphisms(src.ring, dst.ring, bound, jobs):
            col = ik.first_column(L)
            block_ok = ik.is_theta_block(ik.lower_block(L))
            parity_ok = (L.rows[1][1] % 2, L.rows[1][2] % 2) == (1, 0)
            if col not in ((1, 0, 0), (-1, 0, 0)) or not block_ok or not parity_ok:
                struct_bad.append({"src": [s, t], "dst": [x, y], "map": L.as_list()})
    verdicts.append(Verdict(
        "lambda-family-iso-structure",
        not struct_bad,
        {"pairs": [[list(a), list(b)] for a, b in iso_pairs], "exceptions": struct_bad},
    ))

    co_bad = []
    for (s, t), (x, y) in iso_pairs:
        src = manifold_data(cm.colambda_st(s, t))
        dst = manifold_data(cm.colambda_st(x, y))
        for L in ik.find_isomorphisms(src.ring, dst.ring, bound, jobs):
            row = tuple(L.rows[0])
            block_ok = ik.is_theta_block(ik.lower_block(L))
            if row not in ((1, 0, 0), (-1, 0, 0)) or not block_ok:
                co_bad.append({"src": [s, t], "dst": [x, y], "map": L.as_list()})
    verdicts.append(Verdict(
        "colambda-family-iso-structure",
        not co_bad,
        {"pairs": [[list(a), list(b)] for a, b in iso_pairs], "exceptions": co_bad},
    ))

    return _report("families", verdicts, bound=bound, samples=samples, seed=seed)


# --- rigidity partition --------------------------------------------------------


ALPHA_MAPS = {
    "alpha5": (((1, 0, 0), (0, 0, 1), (1, 1, 0)), (-1, -2), 5),
    "alpha6": (((-1, 0, 0), (2, 1, 0), (0, 0, 1)), (1, 1), 6),
    "alpha10": (((1, 0, 0), (1, 1, 0), (0, 0, 1)), (-2, -2), 10),
}


def verify_rigidity_partition(samples=DEFAULT_SAMPLES, bound=DEFAULT_ISO_BOUND,
                              seed=DEFAULT_SEED, jobs=None):
    rng = random.Random(seed)
    verdicts = []

    # family samples
    a1 = []
    while len(a1) < samples:
        x = tuple(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE) for _ in range(3))
        sf = cm.StarForm(x, (0, 0, 0))
        if cm.is_valid_star(sf) and sf.as_tuple() not in [f.as_tuple() for f in a1]:
            a1.append(sf)
    a2 = [cm.lambda_st(s, t) for s, t in _sample_pairs(rng, samples, exclude_zero=True)]
    a3 = [cm.colambda_st(s, t) for s, t in _sample_pairs(rng, samples)]
    chis = [cm.named_star(f"chi{k}") for k in (1, 5, 6, 10)]

    nil_bad = []
    for sf in a1 + a3:
        locus = rk.nilsquare2(rk.realize_star(sf))
        if locus.is_zero:
            nil_bad.append({"form": list(sf.as_tuple()), "expected": "nonzero"})
    for sf in a2 + chis:
        locus = rk.nilsquare2(rk.realize_star(sf))
        if not locus.is_zero:
            nil_bad.append({"form": list(sf.as_tuple()), "expected": "zero",
                            "got": locus.describe()})
    verdicts.append(Verdict(
        "nilsquare-separates-families",
        not nil_bad,
        {"samples_per_family": samples, "exceptions": nil_bad},
    ))

    alpha_bad = []
    for name, (rows, (s, t), k) in sorted(ALPHA_MAPS.items()):
        L = ik.ring_map(rows)
        src = manifold_data(cm.lambda_st(s, t))
        dst = manifold_data(cm.named_star(f"chi{k}"))
        if not (ik.is_isomorphism(L, src.ring, dst.ring)
                and ik.jupp_check(L, src, dst)):
            alpha_bad.append(name)
    verdicts.append(Verdict(
        "explicit-chi-isos-preserve-classes",
        not alpha_bad,
        {"exceptions": alpha_bad},
    ))

    cross = []
    for sf1 in a1:
        for sf3 in a3:
            r1 = rk.realize_star(sf1)
            r3 = rk.realize_star(sf3)
            found = ik.find_isomorphisms(r1, r3, bound, jobs)
            if found:
                cross.append({"a1": list(sf1.as_tuple()), "a3": list(sf3.as_tuple()),
                              "maps": [L.as_list() for L in found]})
    verdicts.append(Verdict(
        "no-iso-between-a1-and-a3",
        not cross,
        {"bound": bound, "pairs": len(a1) * len(a3), "exceptions": cross},
    ))

    for label, family in (("a2", a2), ("a3", a3)):
        jb = []
        data = [manifold_data(sf) for sf in family[:min(len(family), 8)]]
        checked = 0
        for src in data:
            for dst in data:
                for L in ik.find_isomorphisms(src.ring, dst.ring, bound, jobs):
                    checked += 1
                    if not ik.jupp_check(L, src, dst):
                        jb.append({"src": list(src.star.as_tuple()),
                                   "dst": list(dst.star.as_tuple()),
                                   "map": L.as_list()})
        verdicts.append(Verdict(
            f"isos-within-{label}-preserve-classes",
            not jb,
            {"isomorphisms_checked": checked, "exceptions": jb},
        ))

    return _report("rigidity", verdicts, bound=bound, samples=samples, seed=seed)


# --- suite dispatch -------------------------------------------------------------


SUITES = ("classify", "strata", "families", "rigidity", "all")


def run_suite(suite, bound=None, samples=None, seed=DEFAULT_SEED, jobs=None):
    if suite == "classify":
        return classify_cube(bound if bound is not None else DEFAULT_CLASSIFY_BOUND, jobs)
    if suite == "strata":
        return verify_strata(bound if bound is not None else DEFAULT_CLASSIFY_BOUND)
    if suite == "families":
        return verify_families(bound if bound is not None else DEFAULT_ISO_BOUND,
                               samples if samples is not None else 10, seed, jobs)
    if suite == "rigidity":
        return verify_rigidity_partition(samples if samples is not None else DEFAULT_SAMPLES,
                                         bound if bound is not None else DEFAULT_ISO_BOUND,
                                         seed, jobs)
    if suite == "all":
        reports = [
            classify_cube(DEFAULT_CLASSIFY_BOUND if bound is None else bound, jobs),
            verify_strata(DEFAULT_CLASSIFY_BOUND if bound is None else bound),
            verify_families(DEFAULT_ISO_BOUND, 10, seed, jobs),
            verify_rigidity_partition(DEFAULT_SAMPLES if samples is None else samples,
                                      DEFAULT_ISO_BOUND, seed, jobs),
        ]
        return {
            "suite": "all",
            "seed": seed,
            "reports": reports,
            "pass": all(r["pass"] for r in reports),
        }
    raise CapabilityError(f"unknown suite {suite!r}; choose from {SUITES}")
