"""Exact linear algebra over field-like scalars (GaussRat or RatFunc).

Matrices are sequences of row sequences.  Rank uses fraction-free
(Bareiss) elimination; kernels, inverses and canonical row bases use
reduced row echelon form.  All arithmetic is exact, so every result is
a certificate, not an approximation.
"""

from __future__ import annotations

from .errors import SingularMatrixError


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b, zero):
    n = len(a)
    k = len(b)
    p = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = zero
            for q in range(k):
                aq = a[i][q]
                if aq:
                    s = s + aq * b[q][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v, zero):
    out = []
    for row in a:
        s = zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def bareiss_rank(rows, zero, one):
    """Rank by fraction-free Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = one
    for c in range(nc):
        piv_row = None
        for r in range(rank, nr):
            if m[r][c]:
                piv_row = r
                break
        if piv_row is None:
            continue
        m[rank], m[piv_row] = m[piv_row], m[rank]
        piv = m[rank][c]
        for r in range(rank + 1, nr):
            mrc = m[r][c]
            if not mrc:
                # over a field the row may be left unscaled; rank is unaffected
                continue
            for j in range(c + 1, nc):
                m[r][j] = (piv * m[r][j] - mrc * m[rank][j]) / prev
            m[r][c] = zero
        prev = piv
        rank += 1
        if rank == nr:
            break
    return rank


def det(rows, zero, one):
    """Determinant by fraction-free elimination (with row pivoting)."""
    n = len(rows)
    if n == 0:
        return one
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for c in range(n):
        piv_row = None
        for r in range(c, n):
            if m[r][c]:
                piv_row = r
                break
        if piv_row is None:
            return zero
        if piv_row != c:
            m[c], m[piv_row] = m[piv_row], m[c]
            sign = -sign
        piv = m[c][c]
        for r in range(c + 1, n):
            mrc = m[r][c]
            for j in range(c + 1, n):
                m[r][j] = (piv * m[r][j] - mrc * m[c][j]) / prev
            m[r][c] = zero
        prev = piv
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def rref(rows, ncols, zero):
    """Reduced row echelon form.

    Returns (pivot_rows, pivot_cols): the nonzero reduced rows and the
    columns of their leading ones.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        piv_row = None
        for rr in range(r, nr):
            if m[rr][c]:
                piv_row = rr
                break
        if piv_row is None:
            continue
        m[r], m[piv_row] = m[piv_row], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for rr in range(nr):
            if rr != r and m[rr][c]:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def nullspace(rows, ncols, zero, one):
    """Basis of the right kernel {x : rows . x = 0} as tuples of length ncols."""
    red, pivots = rref(rows, ncols, zero)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for ri, pc in enumerate(pivots):
            v[pc] = -red[ri][free]
        basis.append(tuple(v))
    return basis


def inverse(rows, zero, one):
    """Matrix inverse via Gauss-Jordan; raises SingularMatrixError."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv_row = None
        for r in range(c, n):
            if aug[r][c]:
                piv_row = r
                break
        if piv_row is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {c + 1})")
        aug[c], aug[piv_row] = aug[piv_row], aug[c]
        piv = aug[c][c]
        if piv != 1:
            aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def row_basis(vectors, ncols, zero):
    """Canonical (RREF) basis of the span of the given row vectors."""
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return [], []
    return rref(vecs, ncols, zero)


def in_row_span(basis, pivots, v, zero):
    """Membership of v in the row span of an RREF basis."""
    w = list(v)
    for row, pc in zip(basis, pivots):
        f = w[pc]
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    return not any(w)
