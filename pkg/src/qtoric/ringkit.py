"""Graded ring realization by exact integer linear algebra.

A presentation has g generators, all of topological degree 2, plus homogeneous
relations: linear forms (rows of a characteristic matrix) and higher-degree
polynomials (facet non-face products, or the three quadratics of a star form).
`realize` turns this into explicit free Z-modules degree by degree: choose a
monomial basis, reduce everything else against a unit-pivot echelon of the
relation lattice, and record structure constants.

Polynomials are dicts {exponent tuple: coefficient}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import charmat
from .errors import NoMonomialBasisError, TorsionError, ValidationError
from .intlinalg import snf_with_right_transform, unit_echelon
from .nilsquare import solve_square_zero_locus

# --- polynomial helpers ----------------------------------------------------


def poly_add(p, q):
    out = dict(p)
    for m, c in q.items():
        c2 = out.get(m, 0) + c
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return out


def poly_scale(p, c):
    if c == 0:
        return {}
    return {m: c * v for m, v in p.items()}


def poly_mul(p, q, max_gen_degree=None):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            if max_gen_degree is not None and sum(m) > max_gen_degree:
                continue
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_degree(p):
    degs = {sum(m) for m in p}
    if len(degs) > 1:
        raise ValidationError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
    return degs.pop() if degs else None


def linear_poly(coeffs):
    g = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            m = [0] * g
            m[i] = 1
            out[tuple(m)] = c
    return out


def monomials_of_degree(g, k):
    """Exponent tuples of degree k in g variables, graded-lex descending
    (variable 0 largest)."""
    out = []
    for combo in combinations_with_replacement(range(g), k):
        m = [0] * g
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    out.sort(reverse=True)
    return out


def monomial_name(m, names):
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# --- presentations ---------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """Generators in topological degree 2, with linear and polynomial relations."""

    num_generators: int
    gen_names: tuple
    linear_relations: tuple   # tuples of length g
    poly_relations: tuple     # tuples of sorted (monomial, coeff) pairs

    def polys(self):
        return [dict(r) for r in self.poly_relations]


def _freeze_poly(p):
    return tuple(sorted(p.items()))


def make_presentation(num_generators, gen_names, linear_relations, poly_relations):
    for rel in poly_relations:
        d = poly_degree(rel)
        if d is not None and d < 2:
            raise ValidationError("polynomial relations must have generator degree >= 2")
    return RingPresentation(
        num_generators,
        tuple(gen_names),
        tuple(tuple(int(c) for c in r) for r in linear_relations),
        tuple(_freeze_poly(p) for p in poly_relations),
    )


def full_presentation(P, lam):
    """Full quotient presentation: one degree-2 generator per facet, a monomial
    relation per minimal non-face, a linear relation per matrix row."""
    ok, failing = charmat.validate(lam)
    if not ok:
        raise ValidationError(f"matrix is not characteristic; failing vertices {failing}")
    m = P.num_facets
    names = tuple(f"v{j}" for j in range(1, m + 1))
    monos = []
    for nf in sorted(sorted(s) for s in P.minimal_nonfaces):
        expo = [0] * m
        for j in nf:
            expo[j - 1] = 1
        monos.append({tuple(expo): 1})
    linear = [tuple(row) for row in lam.entries]
    return make_presentation(m, names, linear, monos)


def small_presentation(sf):
    """Three-generator presentation of a star form: generator i times the i-th
    right-block row."""
    rows = sf.right_rows()
    names = ("X", "Y", "Z")
    rels = []
    for i in range(3):
        gen = linear_poly(tuple(1 if j == i else 0 for j in range(3)))
        rels.append(poly_mul(gen, linear_poly(rows[i])))
    return make_presentation(3, names, (), rels)


# --- realized graded rings --------------------------------------------------


@dataclass(frozen=True)
class DegreePiece:
    """One graded piece: free Z-module with an explicit basis.

    In the common case the basis is a set of monomials and `reduction` rewrites
    pivot monomials (mode "monomial").  When no monomial subset complements the
    relation lattice, the basis is a unimodular completion of it: `monos` lists
    all monomials of the degree, `transform` is the right Smith transform Q of
    the relation matrix, `rank_rel` its rank, and coordinates of v are the last
    entries of v * Q (mode "completion")."""

    basis: tuple          # basis polys, frozen ((mono, coeff), ...) pairs
    mode: str = "monomial"
    reduction: tuple = ()      # monomial mode: (pivot monomial, row poly) pairs
    monos: tuple = ()          # completion mode: all monomials of the degree
    transform: tuple = ()      # completion mode: rows of Q
    rank_rel: int = 0

    def basis_monomial(self, i):
        poly = dict(self.basis[i])
        if len(poly) == 1 and next(iter(poly.values())) == 1:
            return next(iter(poly))
        return None


@dataclass(frozen=True)
class RingElement:
    degree: int
    coeffs: tuple

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValidationError("cannot add elements of different degrees")
        return RingElement(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RingElement(self.degree, tuple(-c for c in self.coeffs))


@dataclass(frozen=True, eq=False)
class GradedRing:
    presentation: RingPresentation
    max_degree: int
    modulus: int
    survivors: tuple          # indices of generators kept after linear elimination
    substitution: tuple       # (eliminated index, frozen poly over survivors) pairs
    pieces: dict              # topological degree -> DegreePiece
    top_sign: int = 1

    # -- structure ----------------------------------------------------------

    def ranks(self):
        return tuple(len(self.pieces[d].basis) for d in range(0, self.max_degree + 1, 2))

    def rank(self, degree):
        return len(self.pieces[degree].basis)

    def basis_monomials(self, degree):
        """Exponent tuples when the degree has a pure monomial basis, else None
        entries for combination basis elements."""
        piece = self.pieces[degree]
        return tuple(piece.basis_monomial(i) for i in range(len(piece.basis)))

    def basis_names(self, degree):
        names = [self.presentation.gen_names[i] for i in self.survivors]
        piece = self.pieces[degree]
        out = []
        for i in range(len(piece.basis)):
            mono = piece.basis_monomial(i)
            if mono is not None:
                out.append(monomial_name(mono, names))
            else:
                terms = [f"{c}*{monomial_name(m, names)}"
                         for m, c in sorted(dict(piece.basis[i]).items(), reverse=True)]
                out.append(" + ".join(terms))
        return tuple(out)

    def generator_elements(self):
        """Degree-2 elements for the original generators, in order."""
        return [self.reduce(linear_poly(tuple(1 if j == i else 0
                                              for j in range(self.presentation.num_generators))), 2)
                for i in range(self.presentation.num_generators)]

    # -- reduction ----------------------------------------------------------

    def _substitute(self, p):
        return _substitute_poly(p, self.presentation.num_generators,
                                self.survivors, self.substitution, self.modulus)

    def reduce(self, p, degree=None):
        """Normal form of a homogeneous polynomial in the original generators."""
        if not p:
            if degree is None:
                raise ValidationError("degree required to reduce the zero polynomial")
            return self.zero(degree)
        gen_deg = poly_degree(p)
        degree = 2 * gen_deg if degree is None else degree
        if degree != 2 * gen_deg:
            raise ValidationError(f"polynomial has degree {2 * gen_deg}, expected {degree}")
        if degree > self.max_degree or degree % 2:
            raise ValidationError(f"degree {degree} outside the realized range")
        q = self._substitute(p)
        piece = self.pieces[degree]
        if piece.mode == "completion":
            vec = [0] * len(piece.monos)
            index = {m: i for i, m in enumerate(piece.monos)}
            for m, c in q.items():
                vec[index[m]] = c
            coords = [sum(vec[i] * piece.transform[i][j] for i in range(len(vec)))
                      for j in range(len(vec))]
            coeffs = coords[piece.rank_rel:]
        else:
            for pivot, row in piece.reduction:
                c = q.get(pivot, 0)
                if c:
                    q = poly_add(q, poly_scale(dict(row), -c))
            if self.modulus:
                q = {m: c % self.modulus for m, c in q.items() if c % self.modulus}
            basis_monos = [piece.basis_monomial(i) for i in range(len(piece.basis))]
            extra = set(q) - set(basis_monos)
            if extra:
                raise ValidationError(f"reduction left non-basis monomials {sorted(extra)}")
            coeffs = [q.get(m, 0) for m in basis_monos]
        if degree == self.max_degree and self.top_sign == -1:
            coeffs = [-c for c in coeffs]
        return RingElement(degree, tuple(coeffs))

    def zero(self, degree):
        return RingElement(degree, tuple(0 for _ in self.pieces[degree].basis))

    def element_to_poly(self, elem):
        """A polynomial (over surviving variables, re-indexed to original
        generators) representing the element."""
        piece = self.pieces[elem.degree]
        g = self.presentation.num_generators
        sign = self.top_sign if elem.degree == self.max_degree else 1
        out = {}
        for c, bpoly in zip(elem.coeffs, piece.basis):
            if not c:
                continue
            for mono, bc in dict(bpoly).items():
                full = [0] * g
                for e, v in zip(mono, self.survivors):
                    full[v] = e
                key = tuple(full)
                val = out.get(key, 0) + c * sign * bc
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def multiply(self, a, b):
        d = a.degree + b.degree
        if d > self.max_degree:
            raise ValidationError(f"product degree {d} exceeds max degree {self.max_degree}")
        prod = poly_mul(self.element_to_poly(a), self.element_to_poly(b))
        return self.reduce(prod, d)

    # -- pairings -------------------------------------------------------------

    def pairing_matrix(self, degree):
        """Products H^degree x H^(max-degree) -> H^max as an integer matrix
        (requires the top rank to be 1)."""
        top = self.max_degree
        if self.rank(top) != 1:
            raise ValidationError("top degree is not rank 1")
        left = [RingElement(degree, tuple(1 if i == k else 0 for i in range(self.rank(degree))))
                for k in range(self.rank(degree))]
        codeg = top - degree
        right = [RingElement(codeg, tuple(1 if i == k else 0 for i in range(self.rank(codeg))))
                 for k in range(self.rank(codeg))]
        return [[self.multiply(a, b).coeffs[0] for b in right] for a in left]


def _substitute_poly(p, g, survivors, substitution, modulus):
    sub = {i: dict(repl) for i, repl in substitution}
    surv_index = {v: k for k, v in enumerate(survivors)}
    out = {}
    for mono, coeff in p.items():
        term = {tuple(0 for _ in survivors): coeff}
        for i in range(g):
            for _ in range(mono[i]):
                if i in sub:
                    term = poly_mul(term, sub[i])
                else:
                    factor = [0] * len(survivors)
                    factor[surv_index[i]] = 1
                    term = poly_mul(term, {tuple(factor): 1})
        out = poly_add(out, term)
    if modulus:
        out = {m: c % modulus for m, c in out.items() if c % modulus}
    return out


def _eliminate_linear(pres, modulus):
    g = pres.num_generators
    linear = [list(r) for r in pres.linear_relations if any(r)]
    if not linear:
        return tuple(range(g)), ()
    rows, pivots, basis = unit_echelon(linear, g, list(range(g)), modulus)
    substitution = []
    for row, pv in zip(rows, pivots):
        # row has 1 at pv and support on basis columns: pv = -sum(coeffs)
        repl = {}
        for j in basis:
            if row[j]:
                mono = [0] * len(basis)
                mono[basis.index(j)] = 1
                repl[tuple(mono)] = (-row[j]) % modulus if modulus else -row[j]
        substitution.append((pv, _freeze_poly(repl)))
    return tuple(basis), tuple(substitution)


def realize(pres, max_degree, modulus=0):
    """Realize the graded quotient up to the given (even) topological degree.

    Linear relations are eliminated by substitution first (unit pivots always
    exist for characteristic data); each remaining graded piece is cut out of
    the free monomial module by a unit-pivot echelon of the relation lattice.
    Quotients with torsion raise TorsionError.
    """
    if max_degree % 2 or max_degree < 0:
        raise ValidationError("max_degree must be a non-negative even integer")
    survivors, substitution = _eliminate_linear(pres, modulus)

    sub_rels = []
    for rel in pres.polys():
        q = _substitute_poly(rel, pres.num_generators, survivors, substitution, modulus)
        if q:
            sub_rels.append(q)

    gs = len(survivors)
    pieces = {}
    for degree in range(0, max_degree + 1, 2):
        k = degree // 2
        monos = monomials_of_degree(gs, k)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for rel in sub_rels:
            d = poly_degree(rel)
            if d is None or d > k:
                continue
            for pad in monomials_of_degree(gs, k - d):
                shifted = {tuple(a + b for a, b in zip(m, pad)): c for m, c in rel.items()}
                row = [0] * len(monos)
                for m, c in shifted.items():
                    row[index[m]] = c
                rows.append(row)
        pieces[degree] = _piece_from_rows(rows, monos, modulus)
    return GradedRing(pres, max_degree, modulus, survivors, substitution, pieces, 1)


def _piece_from_rows(rows, monos, modulus):
    if not rows:
        return DegreePiece(tuple(_freeze_poly({m: 1}) for m in monos))
    try:
        red_rows, pivots, basis_idx = unit_echelon(
            rows, len(monos), list(range(len(monos))), modulus)
    except NoMonomialBasisError:
        # no monomial subset complements the relation lattice; fall back to a
        # unimodular completion basis from the Smith transform
        diag, q, qinv = snf_with_right_transform(rows, len(monos))
        if any(d not in (0, 1) for d in diag):
            raise TorsionError(f"quotient lattice has torsion (invariant factors {diag})")
        r = sum(1 for d in diag if d)
        basis = []
        for i in range(r, len(monos)):
            poly = {monos[j]: qinv[i][j] for j in range(len(monos)) if qinv[i][j]}
            basis.append(_freeze_poly(poly))
        return DegreePiece(tuple(basis), "completion", (), tuple(monos),
                           tuple(tuple(row) for row in q), r)
    reduction = []
    for row, pv in zip(red_rows, pivots):
        row_poly = {monos[j]: c for j, c in enumerate(row) if c}
        reduction.append((monos[pv], _freeze_poly(row_poly)))
    basis = tuple(_freeze_poly({monos[i]: 1}) for i in basis_idx)
    return DegreePiece(basis, "monomial", tuple(reduction))


def oriented(ring, orient_poly):
    """Ring with the top normal form of `orient_poly` declared +1, when that
    polynomial generates the top degree."""
    if ring.rank(ring.max_degree) != 1:
        return ring
    val = ring.reduce(orient_poly, ring.max_degree).coeffs[0]
    if val == -1:
        return GradedRing(ring.presentation, ring.max_degree, ring.modulus,
                          ring.survivors, ring.substitution, ring.pieces, -1)
    return ring


def realize_star(sf, modulus=0):
    """Realized small ring of a star form, top class oriented by X*Y*Z."""
    ring = realize(small_presentation(sf), 6, modulus)
    return oriented(ring, {(1, 1, 1): 1})


def realize_full(P, lam, modulus=0):
    """Realized full ring, top class oriented by the product of the facets of
    the lexicographically largest vertex."""
    ring = realize(full_presentation(P, lam), 2 * P.dim, modulus)
    top_vertex = max(sorted(sorted(v) for v in P.vertices))
    expo = [0] * P.num_facets
    for j in top_vertex:
        expo[j - 1] = 1
    return oriented(ring, {tuple(expo): 1})


# --- nil-square subgroup of degree 2 -----------------------------------------


def nilsquare2(ring):
    """The exact zero locus {W in H^2 : W^2 = 0}, with a subgroup verdict.

    The locus is computed exactly (definiteness certificates, rational
    factorization, resultants), then cross-checked against brute force over
    coefficients up to 10 in absolute value.
    """
    if ring.modulus:
        raise ValidationError("nilsquare2 is defined over the integers")
    if ring.max_degree < 4:
        raise ValidationError("need max_degree >= 4")
    r2 = ring.rank(2)
    basis2 = [RingElement(2, tuple(1 if i == k else 0 for i in range(r2)))
              for k in range(r2)]
    prods = {}
    for i in range(r2):
        for j in range(i, r2):
            prods[i, j] = ring.multiply(basis2[i], basis2[j]).coeffs
    r4 = ring.rank(4)
    # quadratic forms: F_k(a) = sum_{i<=j} c^k_{ij} a_i a_j with c = prods (x2 off-diagonal)
    forms = []
    for k in range(r4):
        coeffs = {}
        for (i, j), vec in prods.items():
            c = vec[k] if i == j else 2 * vec[k]
            if c:
                coeffs[i, j] = c
        forms.append(coeffs)
    return solve_square_zero_locus(r2, forms)
