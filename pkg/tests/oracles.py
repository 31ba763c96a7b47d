"""Independent oracles for the test suite.

Everything here is deliberately written from scratch against the defining
formulas (longhand equation systems, direct subset enumeration, naive orbit
comparison) so the tests never share a code path with the implementation
they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


# --- longhand residual systems ----------------------------------------------
#
# For a map L = [[a1,b1,c1],[a2,b2,c2],[a3,b3,c3]] between the two-parameter
# family rings, the nine coefficient conditions written out term by term.

def lambda_family_equations(L, s, t, x, y):
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = L
    return [
        b1 * (a1 + s * a2 + t * a3) + a1 * (b1 + s * b2 + t * b3)
        - x * a1 * (a1 + s * a2 + t * a3),
        c1 * (a1 + s * a2 + t * a3) + a1 * (c1 + s * c2 + t * c3)
        - y * a1 * (a1 + s * a2 + t * a3),
        2 * b1 * (b1 + s * b2 + t * b3) + c1 * (c1 + s * c2 + t * c3)
        - b1 * (c1 + s * c2 + t * c3) - c1 * (b1 + s * b2 + t * b3),
        a2 * (b2 + 2 * b3) + b2 * (a2 + 2 * a3) - x * a2 * (a2 + 2 * a3),
        a2 * (c2 + 2 * c3) + c2 * (a2 + 2 * a3) - y * a2 * (a2 + 2 * a3),
        2 * b2 * (b2 + 2 * b3) + c2 * (c2 + 2 * c3)
        - b2 * (c2 + 2 * c3) - c2 * (b2 + 2 * b3),
        a3 * (b2 + b3) + b3 * (a2 + a3) - x * a3 * (a2 + a3),
        a3 * (c2 + c3) + c3 * (a2 + a3) - y * a3 * (a2 + a3),
        2 * b3 * (b2 + b3) + c3 * (c2 + c3)
        - b3 * (c2 + c3) - c3 * (b2 + b3),
    ]


def chi1_equations(L):
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = L
    return [
        (a1 - b1) * (b1 + 2 * b3) + b1 * (a1 + 2 * a3),
        (c1 - 2 * b1) * (b1 + 2 * b3) - (c1 - b1) * (c1 + 2 * c3),
        (c1 - 2 * a1) * (a1 + 2 * a3) + a1 * (c1 + 2 * c3),
        (a2 - b2) * (b1 + b2 + 2 * b3) + b2 * (a1 + a2 + 2 * a3),
        (c2 - 2 * b2) * (b1 + b2 + 2 * b3) - (c2 - b2) * (c1 + c2 + 2 * c3),
        (c2 - 2 * a2) * (a1 + a2 + 2 * a3) + a2 * (c1 + c2 + 2 * c3),
        (a3 - b3) * (b2 + b3) + b3 * (a2 + a3),
        (c3 - 2 * b3) * (b2 + b3) - (c3 - b3) * (c2 + c3),
        (c3 - 2 * a3) * (a2 + a3) + a3 * (c2 + c3),
    ]


def colambda_family_equations(L, s, t, x, y):
    """The mirror-family conditions for maps with b1 = c1 = 0; the first two
    entries encode the squared-first-generator conditions that force that
    shape in the general case."""
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = L
    sq = [
        2 * a1 * b1 - x * b1 * b1,
        2 * a1 * c1 - y * c1 * c1,
        2 * b1 * c1 - 2 * b1 * b1 - c1 * c1,
    ]
    eqs = [
        (2 * b2 - c2) * (b2 + 2 * b3) - (b2 - c2) * (c2 + 2 * c3),
        (2 * b3 - c3) * (b2 + b3) - (b3 - c3) * (c2 + c3),
        (a2 - x * b2) * (b2 + 2 * b3) + b2 * (s * a1 + a2 + 2 * a3),
        (a2 - y * c2) * (c2 + 2 * c3) + c2 * (s * a1 + a2 + 2 * a3),
        (a3 - x * b3) * (b2 + b3) + b3 * (t * a1 + a2 + a3),
        (a3 - y * c3) * (c2 + c3) + c3 * (t * a1 + a2 + a3),
    ]
    return sq, eqs


# --- face enumeration ---------------------------------------------------------


def brute_f_vector(dim, vertex_sets):
    """Count codim-k faces as k-subsets of facets contained in some vertex."""
    out = []
    for k in range(1, dim + 1):
        found = set()
        for v in vertex_sets:
            for sub in combinations(sorted(v), k):
                found.add(sub)
        out.append(len(found))
    return tuple(out)


def brute_h_vector(dim, fv):
    """Expand (t-1)^n + f0 (t-1)^(n-1) + ... + f_{n-1} with Fractions."""
    n = dim

    def binom(e, j):
        num = Fraction(1)
        for i in range(j):
            num *= Fraction(e - i, i + 1)
        return num

    coeffs = [Fraction(0)] * (n + 1)
    terms = [(Fraction(1), n)] + [(Fraction(fv[i]), n - 1 - i) for i in range(n)]
    for coef, e in terms:
        for j in range(e + 1):
            coeffs[j] += coef * binom(e, j) * (-1) ** (e - j)
    out = [coeffs[n - k] for k in range(n + 1)]
    assert all(c.denominator == 1 for c in out)
    return tuple(int(c) for c in out)


# --- star-form helpers (independent of the package) --------------------------


STAR_VERTEX_TRIPLES = (
    (1, 2, 3), (1, 2, 6), (1, 3, 5), (2, 3, 4),
    (1, 5, 6), (2, 4, 6), (3, 4, 5), (4, 5, 6),
)


def star_matrix(t):
    x1, y1, x2, y2, x3, y3 = t
    return [
        [1, 0, 0, 1, x1, x2],
        [0, 1, 0, y1, 1, x3],
        [0, 0, 1, y2, y3, 1],
    ]


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def star_is_characteristic(t):
    mat = star_matrix(t)
    for triple in STAR_VERTEX_TRIPLES:
        block = [[mat[i][j - 1] for j in triple] for i in range(3)]
        if det3(block) not in (1, -1):
            return False
    return True


def admissible_tuples(bound):
    out = []
    rng = range(-bound, bound + 1)
    for x1 in rng:
        for y1 in rng:
            if x1 * y1 not in (0, 2):
                continue
            for x2 in rng:
                for y2 in rng:
                    if x2 * y2 not in (0, 2):
                        continue
                    for x3 in rng:
                        for y3 in rng:
                            if x3 * y3 in (0, 2):
                                out.append((x1, y1, x2, y2, x3, y3))
    return out


# --- naive orbit machinery (sympy-based renormalization) ---------------------


def naive_star_orbit(t, aut_images):
    """All star tuples equivalent to t, via sympy matrix inverses."""
    import sympy

    base = sympy.Matrix(star_matrix(t))
    seen = set()
    for images in aut_images:
        perm = base[:, [img - 1 for img in images]]
        left = perm[:, :3]
        norm = left.inv() * perm
        cols = []
        for i in range(3):
            d = norm[i, i + 3]
            assert d in (1, -1)
            cols.append(d)
        for j in range(3):
            for i in range(3):
                norm[i, j + 3] *= cols[j]
        star = (norm[0, 4], norm[1, 3], norm[0, 5], norm[2, 3], norm[1, 5], norm[2, 4])
        star = tuple(int(v) for v in star)
        for d1, d2, d3 in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            seen.add((d1 * star[0], d1 * star[1], d2 * star[2],
                      d2 * star[3], d3 * star[4], d3 * star[5]))
    return seen


def signed_permutation_matrices():
    """The 48 monomial matrices: permutation pattern with +-1 entries."""
    from itertools import permutations, product
    out = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            rows = []
            for i in range(3):
                row = [0, 0, 0]
                row[perm[i]] = signs[i]
                rows.append(tuple(row))
            out.append(tuple(rows))
    return out


def brute_nilsquare(forms, rank, box=10):
    """All primitive zero vectors of the quadratic system within the box."""
    from itertools import product as iproduct

    def g(*vals):
        out = 0
        for v in vals:
            out = gcd2(out, v)
        return out

    def gcd2(a, b):
        a, b = abs(a), abs(b)
        while b:
            a, b = b, a % b
        return a

    sols = set()
    for vec in iproduct(range(-box, box + 1), repeat=rank):
        if not any(vec):
            continue
        if all(sum(c * vec[i] * vec[j] for (i, j), c in f.items()) == 0 for f in forms):
            d = g(*vec)
            v = tuple(x // d for x in vec)
            for x in v:
                if x:
                    if x < 0:
                        v = tuple(-y for y in v)
                    break
            sols.add(v)
    return sols
