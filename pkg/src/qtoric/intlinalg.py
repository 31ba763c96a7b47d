"""Exact integer linear algebra: gcd row reduction, echelon forms, kernels.

Everything here works on plain Python ints (lists of lists), so there is no
overflow to worry about.  Matrices are lists of row lists.  An optional prime
modulus switches the same routines to arithmetic over Z/p.
"""

from __future__ import annotations

from .errors import NoMonomialBasisError, TorsionError


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    Oi[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def det(A):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inv_unimodular(A):
    """Inverse of an integer matrix with det +-1, by cofactor expansion."""
    n = len(A)
    d = det(A)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")

    def minor(M, i, j):
        return [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]

    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(minor(A, i, j))
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return [[x * d for x in row] for row in adj]


def _modnorm(x, modulus):
    return x % modulus if modulus else x


class Echelon:
    """Row echelon form of an integer row lattice, fully reduced.

    Columns are scanned in the order given by `col_order`; the i-th kept row
    has its leading (pivot) entry in column `pivot_cols[i]`, pivots are
    positive, and entries above each pivot are reduced modulo it.
    """

    def __init__(self, ncols, col_order=None, modulus=0):
        self.ncols = ncols
        self.modulus = modulus
        order = list(col_order) if col_order is not None else list(range(ncols))
        self.col_order = order
        self.col_pos = {c: k for k, c in enumerate(order)}
        self.rows = []
        self.pivot_cols = []

    def add_row(self, row):
        vec = [_modnorm(x, self.modulus) for x in row]
        mod = self.modulus
        for k, c in enumerate(self.col_order):
            if vec[c] == 0:
                continue
            if c in self.pivot_cols:
                p = self.pivot_cols.index(c)
                base = self.rows[p]
                a, b = base[c], vec[c]
                if mod:
                    q = (b * pow(a, -1, mod)) % mod
                    for j in range(self.ncols):
                        vec[j] = (vec[j] - q * base[j]) % mod
                elif b % a == 0:
                    q = b // a
                    for j in range(self.ncols):
                        vec[j] -= q * base[j]
                else:
                    g, x, y = xgcd(a, b)
                    ag, bg = a // g, b // g
                    for j in range(self.ncols):
                        aa, bb = base[j], vec[j]
                        base[j] = x * aa + y * bb
                        vec[j] = -bg * aa + ag * bb
            else:
                where = 0
                pos = self.col_pos
                while where < len(self.pivot_cols) and pos[self.pivot_cols[where]] < k:
                    where += 1
                self.rows.insert(where, vec)
                self.pivot_cols.insert(where, c)
                return True
        return False

    def finalize(self):
        """Normalize pivot signs and reduce entries above pivots.

        Pivots are processed in ascending column order: every stored row has
        zeros before its own pivot, so later reductions cannot disturb the
        columns already handled.
        """
        mod = self.modulus
        for i, c in enumerate(self.pivot_cols):
            row = self.rows[i]
            if mod:
                inv = pow(row[c], -1, mod)
                if inv != 1:
                    self.rows[i] = row = [(x * inv) % mod for x in row]
            elif row[c] < 0:
                self.rows[i] = row = [-x for x in row]
            p = row[c]
            for j in range(i):
                upper = self.rows[j]
                if upper[c]:
                    q = (upper[c] * pow(p, -1, mod)) % mod if mod else upper[c] // p
                    if q:
                        for t in range(self.ncols):
                            upper[t] = _modnorm(upper[t] - q * row[t], mod)
        return self

    @property
    def rank(self):
        return len(self.rows)


def echelon(rows, ncols, col_order=None, modulus=0):
    e = Echelon(ncols, col_order, modulus)
    for r in rows:
        e.add_row(r)
    return e.finalize()


def unit_echelon(rows, ncols, col_order=None, modulus=0):
    """Reduced echelon whose pivots are all 1, choosing pivot columns as needed.

    Returns (pivot_rows, pivot_cols, basis_cols) where each pivot row has a 1
    in its pivot column and support only on basis columns otherwise; the
    non-pivot columns then index a free basis of the quotient.  A greedy
    column-demotion pass handles almost everything; when it fails, every
    complementary column subset is tried for a unimodular minor.  Raises
    TorsionError if the quotient has torsion, NoMonomialBasisError if no
    column subset gives a free complement.
    """
    base_order = list(col_order) if col_order is not None else list(range(ncols))
    demoted = set()
    for _ in range(ncols + 1):
        order = [c for c in base_order if c not in demoted] + \
                [c for c in base_order if c in demoted]
        e = echelon(rows, ncols, order, modulus)
        nonunit = {c for r, c in zip(e.rows, e.pivot_cols) if r[c] != 1}
        if not nonunit:
            basis = [c for c in base_order if c not in e.pivot_cols]
            return e.rows, list(e.pivot_cols), basis
        if nonunit <= demoted:
            break
        demoted |= nonunit
    if not modulus:
        found = _unit_subset_echelon(rows, ncols, base_order)
        if found is not None:
            return found
    diag = snf_diagonal(rows, ncols)
    if any(d not in (0, 1) for d in diag):
        raise TorsionError(f"quotient lattice has torsion (invariant factors {diag})")
    raise NoMonomialBasisError("no unit-pivot column selection found")


_SUBSET_SEARCH_LIMIT = 5000


def _unit_subset_echelon(rows, ncols, base_order):
    """Complete search for a basis column subset whose complement carries a
    unimodular minor of the lattice; preference to late columns as basis."""
    from itertools import combinations
    from math import comb

    e = echelon(rows, ncols, base_order)
    r = e.rank
    t = ncols - r
    if comb(ncols, t) > _SUBSET_SEARCH_LIMIT:
        return None
    for basis_cols in combinations(list(reversed(base_order)), t):
        pivots = [c for c in base_order if c not in basis_cols]
        sub = [[row[c] for c in pivots] for row in e.rows]
        if det(sub) in (1, -1):
            inv = inv_unimodular(sub)
            reduced = [[sum(inv[i][k] * e.rows[k][j] for k in range(r))
                        for j in range(ncols)] for i in range(r)]
            basis = [c for c in base_order if c in basis_cols]
            return reduced, pivots, basis
    return None


def snf_diagonal(rows, ncols):
    """Invariant factors (Smith form diagonal) of the row lattice, non-negative."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return []
    m, n = len(M), ncols
    diag = []
    s = 0
    while s < m and s < n:
        # find smallest nonzero entry in the trailing block
        best = None
        for i in range(s, m):
            for j in range(s, n):
                v = abs(M[i][j])
                if v and (best is None or v < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        M[s], M[bi] = M[bi], M[s]
        for row in M:
            row[s], row[bj] = row[bj], row[s]
        if M[s][s] < 0:
            M[s] = [-x for x in M[s]]
        dirty = False
        for i in range(s + 1, m):
            if M[i][s]:
                q = M[i][s] // M[s][s]
                M[i] = [a - q * b for a, b in zip(M[i], M[s])]
                if M[i][s]:
                    dirty = True
        for j in range(s + 1, n):
            if M[s][j]:
                q = M[s][j] // M[s][s]
                for row in M:
                    row[j] -= q * row[s]
                if M[s][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility fix-up: fold any non-multiple into the pivot row
        p = M[s][s]
        bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n)
                    if M[i][j] % p), None)
        if bad is not None:
            M[s] = [a + b for a, b in zip(M[s], M[bad[0]])]
            continue
        diag.append(p)
        s += 1
    return diag


def snf_with_right_transform(rows, ncols):
    """Smith form with the right transform tracked: returns (diag, Q, Qinv)
    with P * M * Q diagonal for some unimodular P, diag non-negative."""
    M = [list(r) for r in rows if any(r)]
    Q = identity(ncols)
    Qinv = identity(ncols)
    m, n = len(M), ncols

    def col_swap(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in Q:
            row[j], row[k] = row[k], row[j]
        Qinv[j], Qinv[k] = Qinv[k], Qinv[j]

    def col_addmul(j, s, q):
        # col_j += q * col_s;  Qinv row_s -= q * row_j
        for row in M:
            row[j] += q * row[s]
        for row in Q:
            row[j] += q * row[s]
        Qinv[s] = [a - q * b for a, b in zip(Qinv[s], Qinv[j])]

    def col_negate(j):
        for row in M:
            row[j] = -row[j]
        for row in Q:
            row[j] = -row[j]
        Qinv[j] = [-a for a in Qinv[j]]

    diag = []
    s = 0
    while s < m and s < n:
        best = None
        for i in range(s, m):
            for j in range(s, n):
                v = abs(M[i][j])
                if v and (best is None or v < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        M[s], M[bi] = M[bi], M[s]
        if bj != s:
            col_swap(s, bj)
        if M[s][s] < 0:
            col_negate(s)
        dirty = False
        for i in range(s + 1, m):
            if M[i][s]:
                q = M[i][s] // M[s][s]
                M[i] = [a - q * b for a, b in zip(M[i], M[s])]
                if M[i][s]:
                    dirty = True
        for j in range(s + 1, n):
            if M[s][j]:
                q = M[s][j] // M[s][s]
                col_addmul(j, s, -q)
                if M[s][j]:
                    dirty = True
        if dirty:
            continue
        p = M[s][s]
        bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n)
                    if M[i][j] % p), None)
        if bad is not None:
            M[s] = [a + b for a, b in zip(M[s], M[bad[0]])]
            continue
        diag.append(p)
        s += 1
    return diag, Q, Qinv


def kernel_basis(rows, ncols):
    """Basis of the integer kernel {v : M v = 0} of the matrix with given rows."""
    nrows = len(rows)
    aug = []
    for j in range(ncols):
        aug.append([rows[i][j] for i in range(nrows)] + identity(ncols)[j])
    e = echelon(aug, nrows + ncols, list(range(nrows + ncols)))
    out = []
    for row, c in zip(e.rows, e.pivot_cols):
        if c >= nrows:
            out.append(row[nrows:])
    return out


def primitive(vec):
    """Scale to a primitive vector with positive leading nonzero entry."""
    g = 0
    for x in vec:
        g = xgcd(g, x)[0]
    if g == 0:
        return tuple(vec)
    v = [x // g for x in vec]
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return tuple(v)
