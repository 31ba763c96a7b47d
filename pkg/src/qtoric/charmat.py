"""Characteristic matrices on the cube: validity, star form, orbits, families.

A characteristic matrix assigns an integer column to each facet so that the
columns meeting at any vertex form a basis of Z^3 (all vertex minors are +-1).
For the cube every such matrix normalizes, inside its equivalence class under
left GL(3,Z), column sign flips and facet relabeling, to a "star form"

    1 0 0 | 1  x1 x2
    0 1 0 | y1 1  x3
    0 0 1 | y2 y3 1

so the whole theory reduces to the six integers (x1,y1,x2,y2,x3,y3).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import polytope as poly
from .errors import ValidationError
from .intlinalg import det, inv_unimodular

# (x, y) pairs allowed in a star form: the 2x2 blocks [[1, x], [y, 1]] must
# have determinant +-1, i.e. x*y in {0, 2}.
PAIR_PRODUCTS = (0, 2)

# sign patterns (d1, d2, d3) with d1*d2*d3 = 1; di scales the pair (xi, yi).
# These are exactly the residual symmetries of a star form inside its
# GL(3,Z) x column-signs class.
SIGN_PATTERNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


@dataclass(frozen=True)
class CharMatrix:
    polytope: poly.SimplePolytope
    entries: tuple  # n rows of m ints

    def __post_init__(self):
        n, m = self.polytope.dim, self.polytope.num_facets
        if len(self.entries) != n or any(len(r) != m for r in self.entries):
            raise ValidationError(
                f"matrix shape {len(self.entries)}x{len(self.entries[0]) if self.entries else 0}"
                f" does not match polytope ({n}x{m})")

    def column(self, j):
        return tuple(row[j - 1] for row in self.entries)

    def rows(self):
        return [list(r) for r in self.entries]


def char_matrix(P, rows):
    return CharMatrix(P, tuple(tuple(int(x) for x in r) for r in rows))


def validate(lam):
    """Check all vertex minors are +-1; return (ok, failing vertex list)."""
    P = lam.polytope
    failing = []
    for v in sorted(sorted(s) for s in P.vertices):
        block = [[lam.entries[i][j - 1] for j in v] for i in range(P.dim)]
        if det(block) not in (1, -1):
            failing.append(v)
    return (not failing), failing


def is_valid(lam):
    return validate(lam)[0]


@dataclass(frozen=True)
class StarForm:
    x: tuple  # (x1, x2, x3)
    y: tuple  # (y1, y2, y3)

    def __post_init__(self):
        for xi, yi in self.pairs():
            if xi * yi not in PAIR_PRODUCTS:
                raise ValidationError(
                    f"pair ({xi}, {yi}) has product {xi * yi}, not in {PAIR_PRODUCTS}")

    def pairs(self):
        return ((self.x[0], self.y[0]), (self.x[1], self.y[1]), (self.x[2], self.y[2]))

    def as_tuple(self):
        x, y = self.x, self.y
        return (x[0], y[0], x[1], y[1], x[2], y[2])

    def right_rows(self):
        """Rows (r_i, s_i, t_i) of the right-hand 3x3 block."""
        x, y = self.x, self.y
        return ((1, x[0], x[1]), (y[0], 1, x[2]), (y[1], y[2], 1))

    def to_matrix(self):
        rows = self.right_rows()
        ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        return CharMatrix(cube(), tuple(ident[i] + rows[i] for i in range(3)))

    @staticmethod
    def from_tuple(t):
        return StarForm((t[0], t[2], t[4]), (t[1], t[3], t[5]))

    def __str__(self):
        return " ".join(str(v) for v in self.as_tuple())


@lru_cache(maxsize=1)
def cube():
    return poly.cube()


@lru_cache(maxsize=1)
def cube_automorphisms():
    """The 48 facet symmetries of the cube, in deterministic order."""
    return tuple(fp.images for fp in poly.automorphisms(cube()))


def named_generator(name):
    """The generators named in the move diagrams: s1,s2,s3 swap opposite
    coordinate pairs, t1,t2,t3 swap a facet with its opposite."""
    table = {
        "s1": [(1, 2), (4, 5)],
        "s2": [(1, 3), (4, 6)],
        "s3": [(2, 3), (5, 6)],
        "t1": [(1, 4)],
        "t2": [(2, 5)],
        "t3": [(3, 6)],
    }
    return poly.FacetPermutation.from_cycles(6, table[name])


def admissible_pairs(bound):
    """All (x, y) with |x|,|y| <= bound and x*y in {0, 2}, in lex order."""
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if x * y in PAIR_PRODUCTS:
                out.append((x, y))
    return out


def enumerate_star(bound):
    """Stream star forms with all |xi|,|yi| <= bound, lex-ordered on
    (x1,y1,x2,y2,x3,y3).  Only the pairwise block condition is imposed; use
    `is_valid_star` to additionally require the full vertex-minor condition."""
    if bound < 0:
        raise ValidationError("bound must be >= 0")
    pairs = admissible_pairs(bound)
    for x1, y1 in pairs:
        for x2, y2 in pairs:
            for x3, y3 in pairs:
                yield StarForm((x1, x2, x3), (y1, y2, y3))


def _tuple_right_det(t):
    x1, y1, x2, y2, x3, y3 = t
    return (1 * (1 - x3 * y3)
            - x1 * (y1 - x3 * y2)
            + x2 * (y1 * y3 - y2))


def is_valid_star(sf):
    """Full characteristic-matrix validity of a star form."""
    t = sf.as_tuple() if isinstance(sf, StarForm) else tuple(sf)
    if any(t[2 * i] * t[2 * i + 1] not in PAIR_PRODUCTS for i in range(3)):
        return False
    return _tuple_right_det(t) in (1, -1)


def to_star_form(lam):
    """Normalize a valid cube matrix into the star shape.

    Left-multiplies by the inverse of the first three columns, then flips the
    signs of columns 4..6 to put 1 on the right-block diagonal.  The result
    lies in the same class under left GL(3,Z) and column sign flips.
    """
    if lam.polytope != cube():
        raise ValidationError("star form normalization is defined for the cube only")
    ok, failing = validate(lam)
    if not ok:
        raise ValidationError(f"matrix is not characteristic; failing vertices {failing}")
    return StarForm.from_tuple(_renormalize([list(r) for r in lam.entries]))


def _renormalize(mat):
    """Star tuple of a 3x6 integer matrix whose left block is unimodular and
    whose right-block diagonal minors are +-1."""
    left = [row[:3] for row in mat]
    inv = inv_unimodular(left)
    right = [[sum(inv[i][k] * mat[k][j] for k in range(3)) for j in range(3, 6)]
             for i in range(3)]
    for i in range(3):
        d = right[i][i]
        if d not in (1, -1):
            raise ValidationError("right-block diagonal is not +-1; matrix not characteristic")
        if d == -1:
            for r in range(3):
                right[r][i] = -right[r][i]
    return (right[0][1], right[1][0], right[0][2], right[2][0], right[1][2], right[2][1])


def _apply_perm(mat, images):
    """Column action: new column j is old column images[j-1]."""
    return [[row[images[j] - 1] for j in range(6)] for row in mat]


def _sign_variants(t):
    out = []
    for d1, d2, d3 in SIGN_PATTERNS:
        out.append((d1 * t[0], d1 * t[1], d2 * t[2], d2 * t[3], d3 * t[4], d3 * t[5]))
    return out


def star_orbit(sf):
    """All star tuples in the class of `sf` under facet symmetries, left
    GL(3,Z) and column sign flips, as a sorted tuple of 6-tuples."""
    return _orbit_cached(sf.as_tuple() if isinstance(sf, StarForm) else tuple(sf))[0]


@lru_cache(maxsize=65536)
def _orbit_cached(t):
    if not is_valid_star(t):
        raise ValidationError(f"star form {t} is not a characteristic matrix")
    sf = StarForm.from_tuple(t)
    base = [list(sf.to_matrix().entries[i]) for i in range(3)]
    seen = set()
    trace = {}
    for images in cube_automorphisms():
        permuted = _apply_perm(base, images)
        norm = _renormalize(permuted)
        for pattern, variant in zip(SIGN_PATTERNS, _sign_variants(norm)):
            if variant not in seen:
                seen.add(variant)
                trace[variant] = (images, pattern)
    return tuple(sorted(seen)), trace


@dataclass(frozen=True)
class CanonicalForm:
    star: StarForm                  # lexicographically least orbit member
    witness_perm: tuple             # facet images realizing it
    witness_signs: tuple            # sign pattern applied after renormalization
    orbit: tuple                    # every star tuple in the class


def canonicalize(lam):
    """Canonical representative of a matrix class: the lexicographically least
    star tuple over the full finite orbit.  Two matrices canonicalize equally
    exactly when they lie in the same class modulo GL(3,Z), sign flips and
    cube symmetries."""
    sf = lam if isinstance(lam, StarForm) else to_star_form(lam)
    orbit, trace = _orbit_cached(sf.as_tuple())
    best = orbit[0]
    images, pattern = trace[best]
    return CanonicalForm(StarForm.from_tuple(best), images, pattern, orbit)


def canonical_tuple(sf):
    t = sf.as_tuple() if isinstance(sf, StarForm) else tuple(sf)
    return _orbit_cached(t)[0][0]


def class_label(sf):
    """The (e1, e2, e3) label in {0,2}^3: ei = 0 when xi*yi = 0, else 2."""
    out = []
    for xi, yi in sf.pairs():
        p = xi * yi
        if p not in PAIR_PRODUCTS:
            raise ValidationError(f"pair ({xi}, {yi}) violates the block condition")
        out.append(p)
    return tuple(out)


# --- named matrices -------------------------------------------------------
#
# Single source of truth for the built-in star forms, keyed as 6-tuples
# (x1, y1, x2, y2, x3, y3).

CHI = {
    1: (0, 1, 2, 0, 2, 1),
    2: (0, 2, 1, 0, 2, 1),
    3: (1, 0, 0, 1, 2, 1),
    4: (1, 0, 1, 2, 1, 2),
    5: (2, 0, 1, 2, 1, 2),
    6: (1, 0, 1, 2, 2, 1),
    7: (2, 0, 2, 1, 1, 2),
    8: (4, 0, 2, 1, 1, 2),
    9: (1, 0, 2, 1, 2, 1),
    10: (2, 0, 2, 1, 2, 1),
    11: (2, 1, 2, 1, 2, 1),
}

# gamma1 is the t1-image of chi1; note the y2 = 1 variant (0,-1,2,1,0,1) is
# not a characteristic matrix (right-block determinant -3), so only this form
# makes the diagram edges through gamma1 meaningful.
GAMMA = {
    1: (0, -1, 2, 0, 0, 1),
    2: (0, 1, 2, 1, 0, 1),
    3: (2, 1, 2, 0, 2, 1),
    4: (0, 1, 2, 1, 2, 1),
    5: (2, 1, 2, 0, 0, 1),
    6: (1, 0, 1, 2, 1, 0),
    7: (0, 4, 1, 2, 2, 1),
}


def lambda_st(s, t):
    """The two-parameter family with y-side trivial: (x1,x2) = (s,t)."""
    return StarForm((s, t, 2), (0, 0, 1))


def colambda_st(s, t):
    """The mirror family with x-side trivial: (y1,y2) = (s,t)."""
    return StarForm((0, 0, 2), (s, t, 1))


LAMBDA_ZERO = lambda_st(0, 0)  # shared member of both families; tagged A3


def named_star(name):
    """Resolve builtin names: chi1..chi11, gamma1..gamma7, lambda:s,t, colambda:s,t."""
    name = name.strip()
    try:
        if name.startswith("chi"):
            k = int(name[3:])
            if k in CHI:
                return StarForm.from_tuple(CHI[k])
        elif name.startswith("gamma"):
            k = int(name[5:])
            if k in GAMMA:
                return StarForm.from_tuple(GAMMA[k])
        elif name.startswith("lambda:"):
            s, t = (int(v) for v in name[len("lambda:"):].split(","))
            return lambda_st(s, t)
        elif name.startswith("colambda:"):
            s, t = (int(v) for v in name[len("colambda:"):].split(","))
            return colambda_st(s, t)
    except (ValueError, IndexError) as exc:
        raise ValidationError(f"cannot parse matrix name {name!r}: {exc}") from exc
    raise ValidationError(f"unknown builtin matrix name: {name!r}")


# --- family tags ----------------------------------------------------------

@dataclass(frozen=True)
class FamilyTag:
    kind: str          # A1 | A2 | A3 | Chi | Gamma | Other
    index: int = 0     # for Chi/Gamma
    eps: tuple = ()    # class label of the tagged form

    def __str__(self):
        if self.kind in ("Chi", "Gamma"):
            return f"{self.kind}({self.index})"
        return self.kind


def _tuple_family(t):
    for k in sorted(CHI):
        if t == CHI[k]:
            return FamilyTag("Chi", k, _safe_label(t))
    for k in sorted(GAMMA):
        if t == GAMMA[k]:
            return FamilyTag("Gamma", k, _safe_label(t))
    x1, y1, x2, y2, x3, y3 = t
    if t == LAMBDA_ZERO.as_tuple():
        return FamilyTag("A3", eps=_safe_label(t))
    if y1 == y2 == y3 == 0:
        return FamilyTag("A1", eps=_safe_label(t))
    if (y1, y2, x3, y3) == (0, 0, 2, 1):
        return FamilyTag("A2", eps=_safe_label(t))
    if (x1, x2, x3, y3) == (0, 0, 2, 1):
        return FamilyTag("A3", eps=_safe_label(t))
    return FamilyTag("Other", eps=_safe_label(t))


def _safe_label(t):
    return tuple(0 if t[2 * i] * t[2 * i + 1] == 0 else 2 for i in range(3))


def family_of(sf):
    """Tag a single star form by exact membership: the chi/gamma tables first,
    then the three parametrized families, else Other."""
    return _tuple_family(sf.as_tuple() if isinstance(sf, StarForm) else tuple(sf))


# class-level tag priority: a class is named by the least chi index it meets,
# else by the parametrized family of any member (the shared matrix of the A2
# and A3 families counts as A3, matching its exclusion from the A2 family).
def class_family(orbit):
    """Tag a whole class given its complete star-tuple orbit."""
    chis = sorted(k for k in CHI if CHI[k] in orbit)
    if chis:
        return FamilyTag("Chi", chis[0], _safe_label(CHI[chis[0]]))
    if LAMBDA_ZERO.as_tuple() in orbit:
        return FamilyTag("A3", eps=_safe_label(LAMBDA_ZERO.as_tuple()))
    kinds = {}
    for t in orbit:
        tag = _tuple_family(t)
        kinds.setdefault(tag.kind, tag)
    for kind in ("A1", "A2", "A3", "Gamma"):
        if kind in kinds:
            return kinds[kind]
    return FamilyTag("Other")


# --- matrix JSON ----------------------------------------------------------

def matrix_to_json_dict(lam):
    data = {"rows": lam.rows()}
    if lam.polytope == cube():
        data["polytope"] = "cube"
    else:
        data["polytope"] = poly.to_json_dict(lam.polytope)
    return data


def matrix_from_json_dict(data):
    try:
        pdata = data["polytope"]
        rows = data["rows"]
    except KeyError as exc:
        raise ValidationError(f"matrix JSON missing field {exc}") from exc
    P = cube() if pdata == "cube" else poly.from_json_dict(pdata)
    return char_matrix(P, rows)
