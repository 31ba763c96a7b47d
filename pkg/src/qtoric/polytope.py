"""Combinatorial simple polytopes: vertex-facet incidence, face counts, symmetries.

A polytope is stored purely combinatorially as the family of facet sets of its
vertices (1-based facet indices).  No coordinates are kept; realizability is
not checked beyond the incidence invariants below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import CapabilityError, ValidationError

MAX_FACETS_FOR_AUT = 12


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    num_facets: int
    vertices: frozenset  # frozenset of frozensets of facet indices
    minimal_nonfaces: frozenset

    def facet_sets(self):
        return sorted(sorted(v) for v in self.vertices)

    def __repr__(self):
        return f"SimplePolytope(dim={self.dim}, facets={self.num_facets}, vertices={len(self.vertices)})"


@dataclass(frozen=True)
class FacetPermutation:
    """Permutation of facet labels {1..m}; images[i-1] is the image of facet i."""

    images: tuple

    def __call__(self, i):
        return self.images[i - 1]

    def inverse(self):
        m = len(self.images)
        inv = [0] * m
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return FacetPermutation(tuple(inv))

    def compose(self, other):
        """self after other: (self*other)(i) = self(other(i))."""
        return FacetPermutation(tuple(self(other(i)) for i in range(1, len(self.images) + 1)))

    @staticmethod
    def from_cycles(m, cycles):
        images = list(range(1, m + 1))
        for cyc in cycles:
            for k, a in enumerate(cyc):
                images[a - 1] = cyc[(k + 1) % len(cyc)]
        return FacetPermutation(tuple(images))

    @staticmethod
    def identity(m):
        return FacetPermutation(tuple(range(1, m + 1)))


def _derive_minimal_nonfaces(m, vertex_sets):
    nonfaces = []
    for k in range(1, m + 1):
        for sub in combinations(range(1, m + 1), k):
            s = frozenset(sub)
            if any(s <= v for v in vertex_sets):
                continue
            if any(nf <= s for nf in nonfaces):
                continue
            nonfaces.append(s)
    return frozenset(nonfaces)


def make_polytope(dim, num_facets, vertices, minimal_nonfaces=None):
    """Build and validate a SimplePolytope from vertex facet-sets."""
    n, m = dim, num_facets
    if n < 1 or m < n:
        raise ValidationError(f"need dim >= 1 and num_facets >= dim, got {n}, {m}")
    vsets = frozenset(frozenset(v) for v in vertices)
    if not vsets:
        raise ValidationError("polytope needs at least one vertex")
    for v in vsets:
        if len(v) != n:
            raise ValidationError(f"vertex {sorted(v)} does not have exactly {n} facets")
        if not all(1 <= i <= m for i in v):
            raise ValidationError(f"facet index out of range in vertex {sorted(v)}")
    # every ridge (an (n-1)-subset of a vertex) lies in exactly 1 or 2 vertices
    for v in vsets:
        for ridge in combinations(sorted(v), n - 1):
            count = sum(1 for w in vsets if frozenset(ridge) <= w)
            if count not in (1, 2):
                raise ValidationError(
                    f"ridge {list(ridge)} lies in {count} vertices (expected 1 or 2)")
    derived = _derive_minimal_nonfaces(m, vsets)
    if minimal_nonfaces is not None:
        supplied = frozenset(frozenset(s) for s in minimal_nonfaces)
        if supplied != derived:
            raise ValidationError(
                f"supplied minimal non-faces {sorted(map(sorted, supplied))} "
                f"differ from derived {sorted(map(sorted, derived))}")
    return SimplePolytope(n, m, vsets, derived)


def cube():
    """The 3-cube with facets numbered so that facets i and i+3 are opposite."""
    verts = [
        {1, 2, 3}, {1, 2, 6}, {1, 3, 5}, {2, 3, 4},
        {1, 5, 6}, {2, 4, 6}, {3, 4, 5}, {4, 5, 6},
    ]
    return make_polytope(3, 6, verts, minimal_nonfaces=[{1, 4}, {2, 5}, {3, 6}])


def simplex(n):
    """The n-simplex: n+1 facets, every n-subset a vertex."""
    return make_polytope(n, n + 1, list(combinations(range(1, n + 2), n)))


def segment():
    return simplex(1)


def f_vector(P):
    """f_i = number of (dim-i-1)-dimensional faces, from facet subsets lying in a vertex."""
    counts = []
    for k in range(1, P.dim + 1):
        faces = set()
        for v in P.vertices:
            for sub in combinations(sorted(v), k):
                faces.add(sub)
        counts.append(len(faces))
    return tuple(counts)


def h_vector(P):
    """Coefficients (h_0..h_n) of (t-1)^n + f_0 (t-1)^(n-1) + ... + f_(n-1)."""
    n = P.dim
    fv = f_vector(P)
    # poly[k] = coefficient of t^k
    poly = [0] * (n + 1)

    def add_power(coef, e):
        # coef * (t-1)^e
        for j in range(e, -1, -1):
            poly[j] += coef * comb(e, j) * ((-1) ** (e - j))

    add_power(1, n)
    for i in range(n):
        add_power(fv[i], n - 1 - i)
    # h_0 t^n + ... + h_n: read coefficients from t^n down
    return tuple(poly[n - k] for k in range(n + 1))


def automorphisms(P):
    """All facet permutations preserving the vertex family, sorted by image tuple.

    Exhaustive backtracking over facet images; assignments are pruned by the
    per-facet vertex degree and the pairwise co-incidence profile, then every
    surviving permutation is checked against the full vertex family.
    """
    m = P.num_facets
    if m > MAX_FACETS_FOR_AUT:
        raise CapabilityError(
            f"automorphism search capped at {MAX_FACETS_FOR_AUT} facets, got {m}")
    vsets = P.vertices
    degree = {i: sum(1 for v in vsets if i in v) for i in range(1, m + 1)}
    pair = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            pair[i, j] = sum(1 for v in vsets if i in v and j in v)

    out = []
    images = [0] * m
    used = [False] * (m + 1)

    def extend(i):
        if i > m:
            fp = FacetPermutation(tuple(images))
            if all(frozenset(fp(k) for k in v) in vsets for v in vsets):
                out.append(fp)
            return
        for img in range(1, m + 1):
            if used[img] or degree[i] != degree[img]:
                continue
            if any(pair[i, j] != pair[img, images[j - 1]] for j in range(1, i)):
                continue
            images[i - 1] = img
            used[img] = True
            extend(i + 1)
            used[img] = False
        images[i - 1] = 0

    extend(1)
    out.sort(key=lambda fp: fp.images)
    return out


def to_json_dict(P):
    return {
        "dim": P.dim,
        "num_facets": P.num_facets,
        "vertices": P.facet_sets(),
    }


def from_json_dict(data):
    try:
        return make_polytope(data["dim"], data["num_facets"], data["vertices"])
    except KeyError as exc:
        raise ValidationError(f"polytope JSON missing field {exc}") from exc


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
