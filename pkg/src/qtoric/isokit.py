"""Graded ring maps between three-generator realizations: membership checks,
bounded exhaustive search, automorphism groups, and the homeomorphism
criterion (degree-2 and degree-4 class preservation).

A candidate map is a 3x3 integer matrix L whose rows are the images of the
source generators.  L induces a graded ring map iff every source relation
reduces to zero in the target; together with det L = +-1 that already forces
a graded isomorphism: the degree-2 map is invertible, both rings are
generated in degree 2 with equal graded ranks, and a surjection between free
Z-modules of the same finite rank is bijective.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import ringkit as rk
from .errors import CapabilityError, ValidationError
from .intlinalg import det, inv_unimodular

SEARCH_CHUNK = 1 << 17


@dataclass(frozen=True)
class RingMap:
    rows: tuple  # 3 rows of 3 ints; row i = image of source generator i

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValidationError("a ring map on 3 generators needs a 3x3 matrix")

    def det(self):
        return det([list(r) for r in self.rows])

    def __neg__(self):
        return RingMap(tuple(tuple(-x for x in r) for r in self.rows))

    def inverse(self):
        return RingMap(tuple(tuple(r) for r in inv_unimodular([list(r) for r in self.rows])))

    def compose(self, other):
        """self after other (matrix product other * self on row convention)."""
        rows = [[sum(other.rows[i][k] * self.rows[k][j] for k in range(3))
                 for j in range(3)] for i in range(3)]
        return RingMap(tuple(tuple(r) for r in rows))

    def apply_to_poly(self, p):
        out = {}
        for mono, coeff in p.items():
            term = {(0, 0, 0): coeff}
            for i in range(3):
                for _ in range(mono[i]):
                    term = rk.poly_mul(term, rk.linear_poly(self.rows[i]))
            out = rk.poly_add(out, term)
        return out

    def as_list(self):
        return [list(r) for r in self.rows]


def ring_map(rows):
    return RingMap(tuple(tuple(int(x) for x in r) for r in rows))


IDENTITY = ring_map([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

# the eight 2x2 blocks admissible for the lower-right corner of family maps
THETAS = (
    ((1, 0), (0, 1)),
    ((1, 2), (0, -1)),
    ((1, 0), (-1, -1)),
    ((1, 2), (-1, -1)),
)


def residuals(L, src_pres, dst_ring):
    """Normal forms of the images of the source relations in the target ring."""
    if src_pres.num_generators != 3 or dst_ring.presentation.num_generators != 3:
        raise ValidationError("residuals are defined for 3-generator presentations")
    out = []
    for rel in src_pres.polys():
        image = L.apply_to_poly(rel)
        d = rk.poly_degree(rel)
        out.append(dst_ring.reduce(image, 2 * d if d is not None else None))
    return out


def is_isomorphism(L, src_ring, dst_ring):
    """True iff det L = +-1 and L maps the source relations into the target
    ideal (see module docstring for why that suffices)."""
    if src_ring.ranks() != dst_ring.ranks():
        return False
    if L.det() not in (1, -1):
        return False
    return all(r.is_zero() for r in residuals(L, src_ring.presentation, dst_ring))


def jupp_check(L, src, dst):
    """Class preservation for a verified isomorphism: the image of w2 matches
    w2 in the mod-2 target ring and the image of p1 matches p1 over Z."""
    if not is_isomorphism(L, src.ring, dst.ring):
        raise ValidationError("jupp_check requires a verified isomorphism")
    w_src = src.ring2.element_to_poly(src.classes.w2)
    w_img = dst.ring2.reduce(L.apply_to_poly(w_src), 2)
    if w_img.coeffs != dst.classes.w2.coeffs:
        return False
    p_src = src.ring.element_to_poly(src.classes.p1)
    p_img = dst.ring.reduce(L.apply_to_poly(p_src), 4)
    return p_img.coeffs == dst.classes.p1.coeffs


# --- bounded exhaustive search ----------------------------------------------


def _pair_table(dst_ring):
    """T[e, f] = reduction of generator_e * generator_f in degree 4.

    Kept in float64: every intermediate in the search is an integer far below
    2**53 (checked in find_isomorphisms), so float arithmetic stays exact and
    gets BLAS speed; survivors are re-verified in exact ints regardless.
    """
    r4 = dst_ring.rank(4)
    T = np.zeros((3, 3, r4), dtype=np.float64)
    for e in range(3):
        for f in range(3):
            mono = [0, 0, 0]
            mono[e] += 1
            mono[f] += 1
            T[e, f] = dst_ring.reduce({tuple(mono): 1}, 4).coeffs
    return T


def _relation_data(src_pres):
    """Per relation: symmetric coefficient matrix C with relation =
    sum_{p<=q} C[p][q] x_p x_q, plus the set of involved rows."""
    rels = []
    for rel in src_pres.polys():
        C = [[0] * 3 for _ in range(3)]
        involved = set()
        for mono, coeff in rel.items():
            idxs = [k for k, e in enumerate(mono) for _ in range(e)]
            if len(idxs) != 2:
                raise ValidationError("search supports quadratic relations only")
            p, q = sorted(idxs)
            C[p][q] += coeff
            involved.update((p, q))
        rels.append((C, frozenset(involved)))
    return rels


def _plan_order(rels):
    """Row enumeration order maximizing early residual checks."""
    best = None
    for perm in sorted(product(range(3), repeat=3)):
        if len(set(perm)) != 3:
            continue
        fixed = set()
        score = []
        for stage in range(3):
            fixed.add(perm[stage])
            score.append(sum(1 for _, inv in rels if inv <= fixed))
        key = (-score[0], -score[1], perm)
        if best is None or key < best[0]:
            best = (key, perm)
    return best[1]


def find_isomorphisms(src_ring, dst_ring, bound, jobs=None):
    """All maps with entries in [-bound, bound], det +-1 and vanishing
    residuals, sorted by flattened matrix.

    Rows are enumerated stage by stage in an order chosen so that relation
    residuals apply as early as possible; at each stage the residual of a
    relation splits into a part constant in the new row, a part linear in it
    (one BLAS contraction against the whole candidate pool) and a quadratic
    part, so the filter never materializes the raw candidate cube.  Survivors
    of the float filter (exact below 2**52, checked) are re-verified in exact
    integer arithmetic."""
    if bound < 0:
        raise ValidationError("bound must be >= 0")
    if src_ring.ranks() != dst_ring.ranks():
        return []
    rels = _relation_data(src_ring.presentation)
    T = _pair_table(dst_ring)
    order = _plan_order(rels)
    k = T.shape[2]
    T2 = T.reshape(3, 3 * k)

    # exactness bound for the float64 fast path: every residual entry is an
    # integer of magnitude at most sum|C| * 9 * bound^2 * max|T|
    coeff_mass = max((sum(abs(c) for row in C for c in row) for C, _ in rels), default=1)
    worst = coeff_mass * 9 * max(bound, 1) ** 2 * max(1.0, float(np.abs(T).max()))
    if worst >= 2.0 ** 52:
        raise CapabilityError("search bound too large for the exact float fast path")

    pool = np.array(list(product(range(-bound, bound + 1), repeat=3)), dtype=np.float64)
    n = len(pool)

    def bee(U, V):
        """B(u, v) = reduction of the product of two degree-2 rows, rowwise."""
        A = (U @ T2).reshape(len(U), 3, k)
        out = np.zeros((len(U), k))
        for f in range(3):
            out += A[:, f, :] * V[:, f:f + 1]
        return out

    pool_quad = bee(pool, pool)          # B(cand, cand) for the whole pool

    def stage_checks(stage):
        fixed = set(order[:stage + 1])
        prev = set(order[:stage])
        return [C for C, inv in rels if inv <= fixed and not inv <= prev]

    # `sel` holds index tuples into the pool for the rows fixed so far,
    # aligned with `order`; advance() extends by the next row
    sel = np.zeros((1, 0), dtype=np.int64)

    def advance(sel, stage):
        checks = stage_checks(stage)
        m = len(sel)
        if m == 0:
            return np.zeros((0, stage + 1), dtype=np.int64)
        if not checks:
            left = np.repeat(sel, n, axis=0)
            right = np.tile(np.arange(n, dtype=np.int64), m)
            return np.concatenate([left, right[:, None]], axis=1)
        free = order[stage]
        fixed_rows = {order[t]: pool[sel[:, t]] for t in range(stage)}
        # per relation: constant part K (m,k), linear coefficient W (m,3,k),
        # quadratic coefficient c_quad
        parts = []
        for C in checks:
            K = np.zeros((m, k))
            W = np.zeros((m, 3, k))
            c_quad = C[free][free]
            for p in range(3):
                for q in range(p, 3):
                    c = C[p][q]
                    if not c:
                        continue
                    if p == free and q == free:
                        continue
                    if p != free and q != free:
                        K += c * bee(fixed_rows[p], fixed_rows[q])
                    else:
                        other = fixed_rows[q if p == free else p]
                        W += c * (other @ T2).reshape(m, 3, k)
            parts.append((K, W, c_quad))

        chunk = max(1, SEARCH_CHUNK // max(n, 1))
        starts = list(range(0, m, chunk))

        def eval_chunk(start):
            stop = min(start + chunk, m)
            mask = np.ones((stop - start, n), dtype=bool)
            for K, W, c_quad in parts:
                res = np.tensordot(W[start:stop], pool, axes=([1], [1]))  # (mc, k, n)
                res = res.transpose(0, 2, 1)                              # (mc, n, k)
                res += K[start:stop, None, :]
                if c_quad:
                    res += c_quad * pool_quad[None, :, :]
                mask &= ~np.any(res, axis=2)
            return mask

        masks = _run_chunks(eval_chunk, starts, jobs)
        out = []
        for start, mask in zip(starts, masks):
            ii, jj = np.nonzero(mask)
            if len(ii):
                block = np.concatenate(
                    [sel[start + ii], jj[:, None].astype(np.int64)], axis=1)
                out.append(block)
        if not out:
            return np.zeros((0, stage + 1), dtype=np.int64)
        return np.concatenate(out, axis=0)

    for stage in range(3):
        sel = advance(sel, stage)
        if len(sel) == 0:
            return []

    # determinant filter, then exact re-verification
    rows_by_pos = [pool[sel[:, order.index(p)]] for p in range(3)]
    M = np.stack(rows_by_pos, axis=1)
    d = (M[:, 0, 0] * (M[:, 1, 1] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 1])
         - M[:, 0, 1] * (M[:, 1, 0] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 0])
         + M[:, 0, 2] * (M[:, 1, 0] * M[:, 2, 1] - M[:, 1, 1] * M[:, 2, 0]))
    M = M[np.abs(d) == 1]
    out = []
    for mat in M:
        L = ring_map([[int(x) for x in row] for row in mat])
        if is_isomorphism(L, src_ring, dst_ring):
            out.append(L)
    out.sort(key=lambda L: L.rows)
    return out


def _run_chunks(fn, starts, jobs):
    if jobs is None or jobs <= 1 or len(starts) <= 1:
        return [fn(s) for s in starts]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=jobs) as pool_:
        return list(pool_.map(fn, starts))


def automorphisms(ring, bound, jobs=None):
    """Bounded automorphism search; always negation-closed and contains -id."""
    return find_isomorphisms(ring, ring, bound, jobs)


def theta_solutions(bound):
    """All 2x2 unimodular blocks [[b2, c2], [b3, c3]] within the bound that
    satisfy the two degree-4 compatibility equations of the family search."""
    out = []
    rng = range(-bound, bound + 1)
    for b2 in rng:
        for c2 in rng:
            for b3 in rng:
                for c3 in rng:
                    if abs(b2 * c3 - c2 * b3) != 1:
                        continue
                    if (2 * b2 - c2) * (b2 + 2 * b3) != (b2 - c2) * (c2 + 2 * c3):
                        continue
                    if (2 * b3 - c3) * (b2 + b3) != (b3 - c3) * (c2 + c3):
                        continue
                    out.append(((b2, c2), (b3, c3)))
    out.sort()
    return out


def first_column(L):
    return tuple(L.rows[i][0] for i in range(3))


def lower_block(L):
    return ((L.rows[1][1], L.rows[1][2]), (L.rows[2][1], L.rows[2][2]))


def is_theta_block(block):
    return block in THETAS or tuple(tuple(-x for x in r) for r in block) in THETAS
