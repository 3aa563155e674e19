"""Pure-Python integer elimination kernels.

Both functions work on lists of Python ints and never produce fractions:
rows are kept primitive (content 1) after every update, which bounds
coefficient growth for the small, well-conditioned systems seen here.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref(rows, ncols):
    """Fraction-free Gauss-Jordan reduction.

    Returns ``(reduced, pivots)`` where ``reduced`` holds the nonzero rows of
    the reduced row echelon form, each scaled to a primitive integer vector
    with a positive pivot.  The result is canonical for the row space.
    """
    m = [_primitive([int(x) for x in r]) for r in rows]
    m = [r for r in m if any(r)]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        best = 0
        for i in range(r, nrows):
            v = m[i][c]
            if v and (p < 0 or abs(v) < best):
                p, best = i, abs(v)
                if best == 1:
                    break
        if p < 0:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            a = m[i][c]
            if not a:
                continue
            g = gcd(pv, a)
            s, t = pv // g, a // g
            row = m[i]
            m[i] = _primitive([s * x - t * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    out = m[:r]
    for i, c in enumerate(pivots):
        if out[i][c] < 0:
            out[i] = [-x for x in out[i]]
    return out, pivots


def nullspace(rows, ncols):
    """Primitive integer basis of the right kernel, one vector per free column."""
    red, pivots = rref(rows, ncols)
    return _null_from_rref(red, pivots, ncols)


def _null_from_rref(red, pivots, ncols):
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        scale = 1
        for i, c in enumerate(pivots):
            if red[i][f]:
                d = red[i][c]
                scale = scale * d // gcd(scale, d)
        v = [0] * ncols
        v[f] = scale
        for i, c in enumerate(pivots):
            a = red[i][f]
            if a:
                v[c] = -a * (scale // red[i][c])
        basis.append(_primitive(v))
    return basis


def restrict(basis, rows, ncols):
    """Vectors in span(basis) annihilated by every row of ``rows``.

    ``basis`` is a list of integer vectors of length ``ncols``; the returned
    list spans the restricted subspace (not canonicalized).
    """
    k = len(basis)
    if not k or not rows:
        return [list(v) for v in basis]
    cols = [[sum(a * b for a, b in zip(r, v)) for v in basis] for r in rows]
    coeffs = nullspace(cols, k)
    return [[sum(c * v[j] for c, v in zip(cv, basis)) for j in range(ncols)] for cv in coeffs]


def _sandwich(a, x, b, n):
    # a @ x @ b.T for n x n integer matrices stored row-major (x flat)
    ax = [[sum(a[i][k] * x[k * n + j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [sum(ax[i][k] * b[j][k] for k in range(n)) for i in range(n) for j in range(n)]


def restrict_pair(basis, a, b, n):
    """Vectors psi in span(basis) with (a (x) b - b (x) a) psi = 0.

    Uses (a (x) b) vec(X) = vec(a X b^T) for row-major vec, so the n^2 x n^2
    operator is never formed.
    """
    k = len(basis)
    if not k:
        return []
    images = []
    for v in basis:
        p = _sandwich(a, v, b, n)
        q = _sandwich(b, v, a, n)
        images.append([x - y for x, y in zip(p, q)])
    cols = [list(r) for r in zip(*images)]
    coeffs = nullspace(cols, k)
    return [[sum(c * v[j] for c, v in zip(cv, basis)) for j in range(n * n)] for cv in coeffs]
