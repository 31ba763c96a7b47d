"""Exact zero locus of the squaring map on a degree-2 lattice.

The squaring map H^2 -> H^4 is a vector of integral quadratic forms; its zero
locus is a union of sublattices (lines/planes) plus possibly nothing.  We
compute it exactly in three escalating stages:

  1. a semidefinite certificate: if some integer combination of the coordinate
     forms is positive (or negative) semidefinite, the locus lives in its
     kernel lattice, where the system restricts to fewer variables;
  2. rational factorization: when every form splits into rational linear
     factors, the locus is a finite union of linear-system solutions;
  3. resultants: an irreducible form paired with a coprime one cuts out a
     projectively finite set whose rational points are found by eliminating a
     variable.

Every reported component is verified against all forms, and the final result
is cross-checked against brute force on small coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import isqrt

import sympy

from .errors import QtoricError
from .intlinalg import det, echelon, identity, kernel_basis, primitive

BRUTE_BOX = 10
CERT_COEFF = 3


class NilsquareUnresolvedError(QtoricError):
    """The exact solver could not classify the zero locus (out of scope shape)."""


@dataclass(frozen=True)
class ZeroLocus:
    """Zero set of the squaring map on H^2.

    kind: 'zero' | 'line' | 'plane' | 'all' | 'union'
    lines: primitive generators of 1-dimensional components
    planes: tuples of basis vectors of 2-dimensional components
    """

    rank: int
    kind: str
    lines: tuple = ()
    planes: tuple = ()

    @property
    def is_zero(self):
        return self.kind == "zero"

    @property
    def is_subgroup(self):
        return self.kind in ("zero", "line", "plane", "all")

    @property
    def line_generator(self):
        if self.kind != "line":
            raise ValueError("locus is not a single line")
        return self.lines[0]

    def contains(self, vec, forms):
        return all(_eval_form(f, vec) == 0 for f in forms)

    def describe(self):
        if self.kind == "zero":
            return {"kind": "zero"}
        if self.kind == "all":
            return {"kind": "all"}
        return {
            "kind": self.kind,
            "lines": [list(v) for v in self.lines],
            "planes": [[list(v) for v in p] for p in self.planes],
        }


def _eval_form(form, vec):
    return sum(c * vec[i] * vec[j] for (i, j), c in form.items())


def _form_matrix2(form, n):
    """Twice the symmetric matrix of the form (kept integral)."""
    M = [[0] * n for _ in range(n)]
    for (i, j), c in form.items():
        if i == j:
            M[i][i] = 2 * c
        else:
            M[i][j] += c
            M[j][i] += c
    return M


def _is_psd(M):
    """Exact PSD test: all principal minors non-negative."""
    n = len(M)
    for r in range(1, n + 1):
        for rows in combinations(range(n), r):
            sub = [[M[i][j] for j in rows] for i in rows]
            if det(sub) < 0:
                return False
    return True


def _restrict_form(form, basis):
    """Form pulled back along v = sum u_k basis[k]."""
    m = len(basis)
    out = {}
    for (i, j), c in form.items():
        for k in range(m):
            for l in range(m):
                cc = c * basis[k][i] * basis[l][j]
                if not cc:
                    continue
                key = (k, l) if k <= l else (l, k)
                out[key] = out.get(key, 0) + cc
    return {k: v for k, v in out.items() if v}


def _push_line(vec, basis):
    n = len(basis[0])
    return primitive([sum(vec[k] * basis[k][i] for k in range(len(basis)))
                      for i in range(n)])


def _solve_binary(forms):
    """Zero lines of a system of binary quadratic forms; returns list of
    primitive 2-vectors, or None meaning 'everything'."""
    live = [f for f in forms if f]
    if not live:
        return None
    candidates = None
    for f in live:
        A = f.get((0, 0), 0)
        B = f.get((0, 1), 0)
        C = f.get((1, 1), 0)
        lines = []
        if A == 0:
            # f = v (B u + C v)
            lines.append((1, 0))
            if B:
                lines.append(primitive((-C, B)))
            elif C == 0:
                lines = None  # identically zero handled above; unreachable
        else:
            D = B * B - 4 * A * C
            if D >= 0:
                r = isqrt(D)
                if r * r == D:
                    lines.append(primitive((-(B + r), 2 * A)))
                    lines.append(primitive((-(B - r), 2 * A)))
        lineset = set(lines or [])
        candidates = lineset if candidates is None else candidates & lineset
        if not candidates:
            return []
    return sorted(candidates)


def _sym_poly(form, symbols):
    expr = sympy.Integer(0)
    for (i, j), c in form.items():
        expr += c * symbols[i] * symbols[j]
    return sympy.expand(expr)


def _linear_factors(expr, symbols):
    """Rational linear factors of a ternary quadratic, or None if it has an
    irreducible quadratic factor."""
    if expr == 0:
        return []
    factors = []
    const, parts = sympy.factor_list(sympy.Poly(expr, *symbols).as_expr())
    for base, exp in parts:
        p = sympy.Poly(base, *symbols)
        if p.total_degree() == 1:
            vec = [int(p.coeff_monomial(s)) for s in symbols]
            factors.extend([vec] * exp)
        else:
            return None
    return factors


def _lattice_of_linear_system(vecs, n):
    """Kernel lattice of a set of linear forms; returns basis rows."""
    rows = [list(v) for v in vecs if any(v)]
    if not rows:
        return identity(n)
    return kernel_basis(rows, n)


def _solve_ternary(forms):
    """Exact zero components of <=3 coprime-or-not ternary quadratics.

    Returns (lines, planes, everything) with primitive generators.
    """
    symbols = sympy.symbols("a b c")
    exprs = [_sym_poly(f, symbols) for f in forms if f]
    if not exprs:
        return [], [], True

    g = exprs[0]
    for e in exprs[1:]:
        g = sympy.gcd(g, e)
    g = sympy.expand(g)
    if g.free_symbols:
        gp = sympy.Poly(g, *symbols)
        cof = [sympy.expand(sympy.cancel(e / g)) for e in exprs]
        if gp.total_degree() == 2:
            # every form is a constant multiple of g: the locus is V(g)
            fac = _linear_factors(g, symbols)
            if fac is None:
                raise NilsquareUnresolvedError("irreducible common conic factor")
            planes = [tuple(map(tuple, _lattice_of_linear_system([vec], 3)))
                      for vec in fac]
            return [], planes, False
        # g linear: V = plane(g) union common zeros of the linear cofactors
        vec = [int(gp.coeff_monomial(s)) for s in symbols]
        planes = [tuple(map(tuple, _lattice_of_linear_system([vec], 3)))]
        lines = []
        if all(e.free_symbols for e in cof):
            covecs = []
            for e in cof:
                p = sympy.Poly(e, *symbols)
                covecs.append([int(p.coeff_monomial(s)) for s in symbols])
            lat = _lattice_of_linear_system(covecs, 3)
            if len(lat) == 1:
                lines.append(primitive(lat[0]))
            elif len(lat) == 2:
                planes.append(tuple(map(tuple, lat)))
            elif len(lat) == 3:
                return [], [], True
        return lines, planes, False

    # coprime system: try full rational factorization first
    factored = [_linear_factors(e, symbols) for e in exprs]
    if all(f is not None for f in factored):
        lines = set()
        planes = set()
        for choice in product(*factored):
            lat = _lattice_of_linear_system(list(choice), 3)
            if len(lat) == 1:
                lines.add(primitive(lat[0]))
            elif len(lat) == 2:
                planes.add(tuple(map(tuple, lat)))
            elif len(lat) == 3:
                return [], [], True
        lines = [v for v in sorted(lines)
                 if all(_eval_form(f, v) == 0 for f in forms)]
        return lines, sorted(planes), False

    # at least one irreducible conic: intersect it with a coprime companion
    idx = next(i for i, f in enumerate(factored) if f is None)
    f0 = exprs[idx]
    others = [e for i, e in enumerate(exprs) if i != idx]
    if not others:
        raise NilsquareUnresolvedError("a single irreducible conic cannot be enumerated")
    f1 = others[0]
    a, b, c = symbols
    lines = set()
    # candidate with a = b = 0
    if all(_eval_form(f, (0, 0, 1)) == 0 for f in forms):
        lines.add((0, 0, 1))
    res = sympy.expand(sympy.resultant(f0, f1, c))
    if res == 0:
        raise NilsquareUnresolvedError("degenerate resultant")
    rp = sympy.Poly(res, a, b)
    for vec in _binary_rational_roots(rp, (a, b)):
        a0, b0 = vec
        # restrict every form to the pencil (a0 s, b0 s, c)
        s, t = sympy.symbols("s t")
        restricted = []
        for e in exprs:
            re = sympy.expand(e.subs({a: a0 * s, b: b0 * s, c: t}))
            restricted.append(_poly_to_form(sympy.Poly(re, s, t), (s, t)))
        sols = _solve_binary(restricted)
        if sols is None:
            raise NilsquareUnresolvedError("unexpected free pencil")
        for (sv, tv) in sols:
            lines.add(primitive((a0 * sv, b0 * sv, tv)))
    lines = [v for v in sorted(lines) if all(_eval_form(f, v) == 0 for f in forms)]
    return lines, [], False


def _binary_rational_roots(poly, symbols):
    """Primitive integer roots (up to sign) of a homogeneous binary form."""
    a, b = symbols
    expr = poly.as_expr()
    if expr == 0:
        return []
    roots = set()
    const, parts = sympy.factor_list(expr)
    for base, _ in parts:
        p = sympy.Poly(base, a, b)
        if p.total_degree() == 1:
            ca = p.coeff_monomial(a)
            cb = p.coeff_monomial(b)
            roots.add(primitive((int(-cb), int(ca))))
    return sorted(roots)


def _poly_to_form(poly, symbols):
    out = {}
    for mono, coeff in poly.terms():
        idxs = [k for k, e in enumerate(mono) for _ in range(e)]
        if len(idxs) != 2:
            if coeff != 0:
                raise NilsquareUnresolvedError("non-quadratic restriction")
            continue
        i, j = sorted(idxs)
        out[(i, j)] = out.get((i, j), 0) + int(coeff)
    return {k: v for k, v in out.items() if v}


def solve_square_zero_locus(rank, forms):
    """Exact zero locus of the quadratic system, cross-checked by brute force."""
    live = [f for f in forms if f]
    locus = _solve_exact(rank, live)
    _brute_check(rank, live, locus)
    return locus


def _classify(rank, lines, planes, everything):
    lines = tuple(sorted(set(map(tuple, lines))))
    planes = tuple(sorted(set(planes)))
    # drop lines inside reported planes
    if planes:
        kept = []
        for v in lines:
            inside = False
            for p in planes:
                if _in_span(v, p):
                    inside = True
                    break
            if not inside:
                kept.append(v)
        lines = tuple(kept)
    if everything:
        return ZeroLocus(rank, "all")
    if not lines and not planes:
        return ZeroLocus(rank, "zero")
    if len(lines) == 1 and not planes:
        return ZeroLocus(rank, "line", lines)
    if len(planes) == 1 and not lines:
        return ZeroLocus(rank, "plane", (), planes)
    return ZeroLocus(rank, "union", lines, planes)


def _in_span(vec, basis_rows):
    e = echelon([list(r) for r in basis_rows], len(vec))
    v = list(vec)
    for row, c in zip(e.rows, e.pivot_cols):
        if v[c] and v[c] % row[c] == 0:
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def _solve_exact(rank, forms):
    if rank == 0:
        return ZeroLocus(0, "zero")
    if not forms:
        return ZeroLocus(rank, "all")
    if rank == 1:
        zero = all(f.get((0, 0), 0) == 0 for f in forms)
        return ZeroLocus(1, "all") if zero else ZeroLocus(1, "zero")
    if rank == 2:
        sols = _solve_binary(forms)
        if sols is None:
            return ZeroLocus(2, "all")
        return _classify(2, [tuple(v) for v in sols], [], False)
    if rank != 3:
        raise NilsquareUnresolvedError(f"rank {rank} not supported")

    # stage 1: semidefinite certificate
    for signs in product(range(-CERT_COEFF, CERT_COEFF + 1), repeat=len(forms)):
        if not any(signs):
            continue
        combo = {}
        for s, f in zip(signs, forms):
            for k, c in f.items():
                combo[k] = combo.get(k, 0) + s * c
        combo = {k: v for k, v in combo.items() if v}
        if not combo:
            continue
        M = _form_matrix2(combo, 3)
        if not _is_psd(M):
            continue
        kern = kernel_basis(M, 3)
        if len(kern) == 0:
            return ZeroLocus(3, "zero")
        if len(kern) == 1:
            w = primitive(kern[0])
            if all(_eval_form(f, w) == 0 for f in forms):
                return ZeroLocus(3, "line", (w,))
            return ZeroLocus(3, "zero")
        if len(kern) == 2:
            restricted = [_restrict_form(f, kern) for f in forms]
            sols = _solve_binary(restricted)
            if sols is None:
                return _classify(3, [], [tuple(map(tuple, kern))], False)
            return _classify(3, [_push_line(v, kern) for v in sols], [], False)

    # stages 2-3: factorization / resultants
    lines, planes, everything = _solve_ternary(forms)
    return _classify(3, [tuple(v) for v in lines], planes, everything)


def _brute_check(rank, forms, locus):
    box = range(-BRUTE_BOX, BRUTE_BOX + 1)
    for vec in product(box, repeat=rank):
        if not any(vec):
            continue
        is_zero = all(_eval_form(f, vec) == 0 for f in forms)
        described = _locus_contains(locus, vec)
        if is_zero != described:
            raise QtoricError(
                f"nil-square locus mismatch at {vec}: brute={is_zero} exact={described}")


def _locus_contains(locus, vec):
    if locus.kind == "all":
        return True
    if locus.kind == "zero":
        return False
    p = primitive(vec)
    if any(p == line for line in locus.lines):
        return True
    return any(_in_span(vec, plane) for plane in locus.planes)
