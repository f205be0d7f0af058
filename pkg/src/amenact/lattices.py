"""Exact integer-lattice arithmetic: Hermite and Smith normal forms.

Everything here works on row lattices: a lattice L <= Z^dim is given by a
list of integer rows spanning it.  All arithmetic is exact (Python ints),
which is what the subgroup canonical forms upstream rely on.
"""

from __future__ import annotations


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf(rows, dim: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns echelon rows with positive pivots in strictly increasing
    columns; entries above each pivot are reduced into [0, pivot).
    Zero rows are dropped, so the result is a basis.
    """
    work = [list(r) for r in rows if any(r)]
    result: list[list[int]] = []
    for col in range(dim):
        pivot_row = None
        rest = []
        for row in work:
            if row[col] == 0:
                rest.append(row)
            elif pivot_row is None:
                pivot_row = row
            else:
                a, b = pivot_row[col], row[col]
                g, x, y = _ext_gcd(a, b)
                am, bm = a // g, b // g
                new_pivot = [x * p + y * q for p, q in zip(pivot_row, row)]
                new_row = [am * q - bm * p for p, q in zip(pivot_row, row)]
                pivot_row, row = new_pivot, new_row
                if any(row):
                    rest.append(row)
        work = rest
        if pivot_row is None:
            continue
        if pivot_row[col] < 0:
            pivot_row = [-v for v in pivot_row]
        p = pivot_row[col]
        for prev in result:
            q = prev[col] // p
            if q:
                for j in range(col, dim):
                    prev[j] -= q * pivot_row[j]
        result.append(pivot_row)
    return result


def hnf_with_transform(rows, dim: int):
    """HNF together with a unimodular U such that U * rows = H (zero rows kept).

    The returned H has the echelon rows first and exact zero rows last; U is
    len(rows) x len(rows).  Rows of U opposite the zero rows of H span the
    integer kernel of the row matrix.
    """
    m = len(rows)
    work = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    order: list[int] = []
    live = list(range(m))
    for col in range(dim):
        pivot_i = None
        for i in live:
            if work[i][col] == 0:
                continue
            if pivot_i is None:
                pivot_i = i
            else:
                a, b = work[pivot_i][col], work[i][col]
                g, x, y = _ext_gcd(a, b)
                am, bm = a // g, b // g
                rp, ri = work[pivot_i], work[i]
                up, ui = u[pivot_i], u[i]
                work[pivot_i] = [x * p + y * q for p, q in zip(rp, ri)]
                work[i] = [am * q - bm * p for p, q in zip(rp, ri)]
                u[pivot_i] = [x * p + y * q for p, q in zip(up, ui)]
                u[i] = [am * q - bm * p for p, q in zip(up, ui)]
        if pivot_i is None:
            continue
        if work[pivot_i][col] < 0:
            work[pivot_i] = [-v for v in work[pivot_i]]
            u[pivot_i] = [-v for v in u[pivot_i]]
        p = work[pivot_i][col]
        for j in order:
            q = work[j][col] // p
            if q:
                work[j] = [a - q * b for a, b in zip(work[j], work[pivot_i])]
                u[j] = [a - q * b for a, b in zip(u[j], u[pivot_i])]
        order.append(pivot_i)
        live.remove(pivot_i)
    perm = order + live
    return [work[i] for i in perm], [u[i] for i in perm]


def kernel(rows, dim: int) -> list[list[int]]:
    """Basis of {v : v * rows = 0} for the given row matrix."""
    h, u = hnf_with_transform(rows, dim)
    return [u[i] for i in range(len(rows)) if not any(h[i])]


def reduce_mod(basis, vec):
    """Canonical representative of ``vec`` modulo the HNF row lattice."""
    v = list(vec)
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        q = v[col] // row[col]
        if q:
            for j in range(col, len(v)):
                v[j] -= q * row[j]
    return tuple(v)


def contains(basis, vec) -> bool:
    return not any(reduce_mod(basis, vec))


def lattice_index(basis, dim: int):
    """Index [Z^dim : L]; None when L has rank < dim (infinite index)."""
    if len(basis) < dim:
        return None
    idx = 1
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        idx *= row[col]
    return idx


def intersect(rows1, rows2, dim: int) -> list[list[int]]:
    """Basis (HNF) of the intersection of two row lattices in Z^dim."""
    b1 = hnf(rows1, dim)
    b2 = hnf(rows2, dim)
    if not b1 or not b2:
        return []
    stacked = b1 + b2
    combos = kernel(stacked, dim)
    n1 = len(b1)
    gens = []
    for combo in combos:
        vec = [0] * dim
        for c, row in zip(combo[:n1], b1):
            if c:
                for j in range(dim):
                    vec[j] += c * row[j]
        gens.append(vec)
    return hnf(gens, dim)


def snf_diagonal(rows, dim: int):
    """Smith normal form of a row lattice, tracking only the right transform.

    Returns (diag, V) with V unimodular (dim x dim, as rows) such that the
    lattice spanned by ``rows`` maps onto the lattice spanned by
    {diag[i] * e_i} under x -> x @ V.  diag entries are >= 0, padded with 0
    up to dim, and satisfy the divisibility chain diag[i] | diag[i+1]
    whenever both are nonzero.
    """
    mat = [list(r) for r in rows if any(r)]
    v = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]

    def col_combine(ci, cj, a, b):
        # (col ci, col cj) <- unimodular combination; mirror on V columns.
        g, x, y = _ext_gcd(a, b)
        am, bm = a // g, b // g
        for row in mat:
            p, q = row[ci], row[cj]
            row[ci] = x * p + y * q
            row[cj] = am * q - bm * p
        for row in v:
            p, q = row[ci], row[cj]
            row[ci] = x * p + y * q
            row[cj] = am * q - bm * p

    def row_combine(ri, rj, a, b):
        g, x, y = _ext_gcd(a, b)
        am, bm = a // g, b // g
        rp, rq = mat[ri], mat[rj]
        mat[ri] = [x * p + y * q for p, q in zip(rp, rq)]
        mat[rj] = [am * q - bm * p for p, q in zip(rp, rq)]

    t = 0
    while t < min(len(mat), dim):
        # move a nonzero entry into (t, t)
        found = None
        for i in range(t, len(mat)):
            for j in range(t, dim):
                if mat[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        i, j = found
        if i != t:
            mat[t], mat[i] = mat[i], mat[t]
        if j != t:
            for row in mat:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
        while True:
            for i in range(t + 1, len(mat)):
                if mat[i][t]:
                    row_combine(t, i, mat[t][t], mat[i][t])
            dirty = False
            for j in range(t + 1, dim):
                if mat[t][j]:
                    col_combine(t, j, mat[t][t], mat[t][j])
                    dirty = True
            if dirty or any(mat[i][t] for i in range(t + 1, len(mat))):
                continue
            # force the pivot to divide the rest of the submatrix; this is
            # what makes the final diagonal a divisibility chain
            p = mat[t][t]
            offender = None
            for i in range(t + 1, len(mat)):
                for j in range(t + 1, dim):
                    if mat[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mat[t] = [a + b for a, b in zip(mat[t], mat[offender])]
        if mat[t][t] < 0:
            mat[t] = [-a for a in mat[t]]
        t += 1

    diag = [mat[i][i] if i < len(mat) and i < dim else 0 for i in range(dim)]
    return diag, v


def express(rows, dim: int, vec):
    """Coefficients c with c * rows = vec, or None when vec is outside.

    Works for any generating set (rows need not be a basis).
    """
    h, u = hnf_with_transform(rows, dim)
    v = list(vec)
    qs = [0] * len(rows)
    for i, row in enumerate(h):
        if not any(row):
            continue
        col = next(j for j, x in enumerate(row) if x)
        q = v[col] // row[col]
        if q:
            for j in range(col, dim):
                v[j] -= q * row[j]
        qs[i] = q
    if any(v):
        return None
    combo = [0] * len(rows)
    for i, q in enumerate(qs):
        if q:
            for j in range(len(rows)):
                combo[j] += q * u[i][j]
    return combo


def unimodular_inverse(mat):
    """Exact inverse of a unimodular integer matrix (given as rows)."""
    from fractions import Fraction

    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for row in a:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            ints.append(int(x))
        out.append(ints)
    return out
