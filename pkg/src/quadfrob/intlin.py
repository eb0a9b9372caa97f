"""Exact linear algebra over Z and Q.

Matrices are plain lists of rows of Python ints; everything is exact,
arbitrary precision, and deterministic.  Empty matrices lose their column
count, so the functions that care take an explicit ``ncols``.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(nrows, ncols):
    return [[0] * ncols for _ in range(nrows)]


def copy_matrix(a):
    return [list(row) for row in a]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols)] if ncols else []
    return [[row[j] for row in a] for j in range(len(a[0]))]


def mat_mul(a, b, b_ncols=None):
    n = len(b[0]) if b else (b_ncols if b_ncols is not None else 0)
    out = [[0] * n for _ in range(len(a))]
    for i, arow in enumerate(a):
        orow = out[i]
        for k, aik in enumerate(arow):
            if aik:
                brow = b[k]
                for j, bkj in enumerate(brow):
                    if bkj:
                        orow[j] += aik * bkj
    return out


def mat_vec(a, v):
    return [sum(aij * vj for aij, vj in zip(row, v) if aij and vj) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def is_zero_matrix(a):
    return all(all(x == 0 for x in row) for row in a)


def kron(a, b, a_shape=None, b_shape=None):
    """Kronecker product; vec(x (x) y)[i*nb+j] = x[i]*y[j] convention."""
    am = len(a)
    an = len(a[0]) if a else (a_shape[1] if a_shape else 0)
    bm = len(b)
    bn = len(b[0]) if b else (b_shape[1] if b_shape else 0)
    out = zeros(am * bm, an * bn)
    for i in range(am):
        for j in range(an):
            aij = a[i][j]
            if aij:
                for k in range(bm):
                    brow = b[k]
                    orow = out[i * bm + k]
                    for l in range(bn):
                        if brow[l]:
                            orow[j * bn + l] = aij * brow[l]
    return out


def xgcd(a, b):
    """Returns (g, s, t) with g = s*a + t*b and g >= 0."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


# ---------------------------------------------------------------------------
# Hermite normal form (row lattice canonical form)

def hnf_rows(vectors, ncols=None):
    """Canonical basis of the row lattice spanned by ``vectors``.

    Echelon with pivots on the leftmost columns, pivots positive, entries
    above each pivot reduced into [0, pivot).  Two generating sets span the
    same lattice iff their forms are identical.
    """
    rows = [list(r) for r in vectors if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    basis = {}
    for vec in rows:
        v = list(vec)
        while True:
            p = next((j for j, e in enumerate(v) if e), None)
            if p is None:
                break
            if p not in basis:
                basis[p] = v
                break
            w = basis[p]
            a, b = w[p], v[p]
            if b % a == 0:
                q = b // a
                v = [vj - q * wj for vj, wj in zip(v, w)]
            else:
                g, s, t = xgcd(a, b)
                basis[p] = [s * wj + t * vj for wj, vj in zip(w, v)]
                v = [(a // g) * vj - (b // g) * wj for wj, vj in zip(w, v)]
    pivots = sorted(basis)
    for p in pivots:
        if basis[p][p] < 0:
            basis[p] = [-e for e in basis[p]]
    for i, p in enumerate(pivots):
        for p2 in pivots[i + 1:]:
            prow = basis[p2]
            q = basis[p][p2] // prow[p2]
            if q:
                basis[p] = [a - q * b for a, b in zip(basis[p], prow)]
    return [basis[p] for p in pivots]


def hnf_rows_lower(vectors, ncols=None):
    """Row HNF in lower-triangular orientation (rightmost pivots first).

    For a full-rank rank-2 lattice this is the ((a,0),(b,c)) shape with
    a, c > 0 and 0 <= b < a.
    """
    rev = [list(reversed(r)) for r in vectors]
    h = hnf_rows(rev, ncols)
    out = [list(reversed(r)) for r in h]
    out.reverse()
    return out


def lattice_eq(rows_a, rows_b):
    return hnf_rows(rows_a) == hnf_rows(rows_b)


# ---------------------------------------------------------------------------
# Smith normal form with full transform tracking

def smith_normal_form(a, ncols=None):
    """Returns (diag, U, V, Uinv) with U*A*V diagonal.

    diag has min(m, n) entries, nonnegative, each dividing the next nonzero
    one; U, V unimodular; Uinv is the exact inverse of U.
    """
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    d = [list(r) for r in a]
    u = identity(m)
    uinv = identity(m)
    v = identity(n)

    def row_addmul(i, t, q):
        # row_i += q * row_t
        di, dt = d[i], d[t]
        for j in range(n):
            if dt[j]:
                di[j] += q * dt[j]
        ui, ut = u[i], u[t]
        for j in range(m):
            if ut[j]:
                ui[j] += q * ut[j]
        for r in range(m):
            if uinv[r][i]:
                uinv[r][t] -= q * uinv[r][i]

    def row_swap(i, t):
        d[i], d[t] = d[t], d[i]
        u[i], u[t] = u[t], u[i]
        for r in range(m):
            uinv[r][i], uinv[r][t] = uinv[r][t], uinv[r][i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in range(m):
            uinv[r][i] = -uinv[r][i]

    def col_addmul(j, t, q):
        # col_j += q * col_t
        for r in range(m):
            if d[r][t]:
                d[r][j] += q * d[r][t]
        for r in range(n):
            if v[r][t]:
                v[r][j] += q * v[r][t]

    def col_swap(j, t):
        for r in range(m):
            d[r][j], d[r][t] = d[r][t], d[r][j]
        for r in range(n):
            v[r][j], v[r][t] = v[r][t], v[r][j]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            row = d[i]
            for j in range(t, n):
                e = row[j]
                if e and (piv is None or abs(e) < piv[0]):
                    piv = (abs(e), i, j)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            if d[t][t] < 0:
                row_neg(t)
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        row_addmul(i, t, -q)
                    if d[i][t]:
                        row_swap(i, t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        col_addmul(j, t, -q)
                    if d[t][j]:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            if all(d[i][t] == 0 for i in range(t + 1, m)):
                break
        # divisibility of the remaining block by the pivot
        fixed = False
        dt = d[t][t]
        for i in range(t + 1, m):
            if any(e % dt for e in d[i][t + 1:n]):
                row_addmul(t, i, 1)
                fixed = True
                break
        if not fixed:
            t += 1
    diag = [d[i][i] for i in range(min(m, n))]
    return diag, u, v, uinv


def snf_diagonal(a, ncols=None):
    diag, _, _, _ = smith_normal_form(a, ncols)
    return diag


class IntSolver:
    """Repeated exact solves of A x = b, plus ker(A), via one row Hermite
    form of [A^T | I]; the lattice {(Ax, x)} keeps entries reduced, unlike
    Smith-form transform matrices."""

    def __init__(self, a, ncols=None):
        self.m = len(a)
        n = len(a[0]) if a else ncols
        if n is None:
            raise ValueError("ncols required for empty matrix")
        self.n = n
        at = transpose(a, ncols=n) if a else [[] for _ in range(n)]
        ext = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(at)]
        h = hnf_rows(ext) if ext else []
        self.image_rows = []
        self.kernel_rows = []
        for row in h:
            if any(row[: self.m]):
                self.image_rows.append(row)
            else:
                self.kernel_rows.append(row[self.m:])

    def solve(self, b):
        vec = list(b) + [0] * self.n
        for row in self.image_rows:
            p = next(j for j, e in enumerate(row) if e)
            if vec[p]:
                if vec[p] % row[p]:
                    return None
                q = vec[p] // row[p]
                vec = [v - q * r for v, r in zip(vec, row)]
        if any(vec[: self.m]):
            return None
        return [-v for v in vec[self.m:]]


def kernel_basis(a, ncols=None):
    """Basis rows of {x : A x = 0} over Z; always a saturated lattice."""
    m = len(a)
    n = len(a[0]) if a else ncols
    if n is None:
        raise ValueError("ncols required for empty matrix")
    if m == 0:
        return identity(n)
    return IntSolver(a, ncols=n).kernel_rows


def solve_int(a, b, ncols=None):
    return IntSolver(a, ncols).solve(b)


def rank_rat(a):
    """Rank over Q by exact fraction Gaussian elimination."""
    if not a or not a[0]:
        return 0
    rows = [[Fraction(x) for x in row] for row in a]
    n = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < n:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] * inv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        rank += 1
        col += 1
    return rank


def det_int(a):
    """Signed determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def perm_matrix(ndigits, base, order):
    """Permutation of tensor factors on flat (row-major) indices.

    ``order[k]`` is the source factor that lands in target slot k.  Returns
    the 0/1 matrix P with P(x_0 (x) ... ) = x_{order[0]} (x) x_{order[1]} ...
    """
    size = base ** ndigits
    out = zeros(size, size)
    for src in range(size):
        digits = []
        s = src
        for _ in range(ndigits):
            digits.append(s % base)
            s //= base
        digits.reverse()
        tgt = 0
        for k in range(ndigits):
            tgt = tgt * base + digits[order[k]]
        out[tgt][src] = 1
    return out
