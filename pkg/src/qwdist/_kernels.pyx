# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer elimination kernels.

The reduction runs on a C ``int64`` buffer without the GIL.  Any overflow
(detected with compiler builtins) aborts the fast path and the call is
retried with the arbitrary-precision Python routine, so results are always
exact.
"""
from libc.stdlib cimport malloc, free

from qwdist import _kernels_py

cdef extern from *:
    """
    static inline int qw_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qw_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint qw_mul_ovf(long long a, long long b, long long *r) nogil
    bint qw_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long _llabs(long long a) noexcept nogil:
    return -a if a < 0 else a


cdef void _make_primitive(long long *row, Py_ssize_t n) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t k
    for k in range(n):
        if row[k]:
            g = _gcd(g, row[k])
            if g == 1:
                return
    if g > 1:
        for k in range(n):
            row[k] = row[k] // g


cdef int _rref_i64(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                   Py_ssize_t *pivots, Py_ssize_t *rank) noexcept nogil:
    # returns 1 on overflow, 0 on success
    cdef Py_ssize_t r = 0, c, i, k, p
    cdef long long pv, a, g, s, t, best, v, x, y
    cdef long long *prow
    cdef long long *row
    cdef long long *tmp
    for i in range(nrows):
        _make_primitive(m + i * ncols, ncols)
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        best = 0
        for i in range(r, nrows):
            v = m[i * ncols + c]
            if v and (p < 0 or _llabs(v) < best):
                p = i
                best = _llabs(v)
                if best == 1:
                    break
        if p < 0:
            continue
        if p != r:
            for k in range(ncols):
                v = m[r * ncols + k]
                m[r * ncols + k] = m[p * ncols + k]
                m[p * ncols + k] = v
        prow = m + r * ncols
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m + i * ncols
            a = row[c]
            if not a:
                continue
            g = _gcd(pv, a)
            s = pv // g
            t = a // g
            for k in range(ncols):
                if qw_mul_ovf(s, row[k], &x):
                    return 1
                if qw_mul_ovf(t, prow[k], &y):
                    return 1
                if qw_sub_ovf(x, y, &row[k]):
                    return 1
            _make_primitive(row, ncols)
        pivots[r] = c
        r += 1
    for i in range(r):
        row = m + i * ncols
        if row[pivots[i]] < 0:
            for k in range(ncols):
                row[k] = -row[k]
    rank[0] = r
    return 0


def rref(rows, Py_ssize_t ncols):
    """Same contract as :func:`qwdist._kernels_py.rref`."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, k, rank = 0
    cdef int failed
    if nrows == 0 or ncols == 0:
        return _kernels_py.rref(rows, ncols)
    cdef long long *m = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or pivots == NULL:
        free(m)
        free(pivots)
        raise MemoryError()
    try:
        try:
            for i in range(nrows):
                row = rows[i]
                if len(row) != ncols:
                    raise ValueError("ragged row in elimination input")
                for k in range(ncols):
                    m[i * ncols + k] = row[k]
        except OverflowError:
            return _kernels_py.rref(rows, ncols)
        with nogil:
            failed = _rref_i64(m, nrows, ncols, pivots, &rank)
        if failed:
            return _kernels_py.rref(rows, ncols)
        out = [[m[i * ncols + k] for k in range(ncols)] for i in range(rank)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(m)
        free(pivots)


def nullspace(rows, Py_ssize_t ncols):
    """Same contract as :func:`qwdist._kernels_py.nullspace`."""
    red, pivots = rref(rows, ncols)
    return _kernels_py._null_from_rref(red, pivots, ncols)


cdef int _matmul_bt_i64(long long *a, Py_ssize_t ar, long long *b, Py_ssize_t br,
                        Py_ssize_t inner, long long *out) noexcept nogil:
    # out[i, j] = sum_k a[i, k] * b[j, k]; returns 1 on overflow
    cdef Py_ssize_t i, j, k
    cdef long long acc, x
    for i in range(ar):
        for j in range(br):
            acc = 0
            for k in range(inner):
                if qw_mul_ovf(a[i * inner + k], b[j * inner + k], &x):
                    return 1
                if __builtin_add_ovf(acc, x, &acc):
                    return 1
            out[i * br + j] = acc
    return 0


cdef extern from *:
    """
    static inline int __builtin_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    bint __builtin_add_ovf(long long a, long long b, long long *r) nogil


cdef long long *_to_buffer(seq, Py_ssize_t nrows, Py_ssize_t ncols) except? NULL:
    cdef long long *buf = <long long *> malloc(max(1, nrows * ncols) * sizeof(long long))
    cdef Py_ssize_t i, k
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = seq[i]
            if len(row) != ncols:
                raise ValueError("ragged row in elimination input")
            for k in range(ncols):
                buf[i * ncols + k] = row[k]
    except BaseException:
        free(buf)
        raise
    return buf


def restrict(basis, rows, Py_ssize_t ncols):
    """Same contract as :func:`qwdist._kernels_py.restrict`."""
    cdef Py_ssize_t k = len(basis), nr = len(rows)
    cdef long long *bb = NULL
    cdef long long *rr = NULL
    cdef long long *prod = NULL
    cdef int failed
    if not k or not nr:
        return [list(v) for v in basis]
    try:
        try:
            bb = _to_buffer(basis, k, ncols)
            rr = _to_buffer(rows, nr, ncols)
        except OverflowError:
            return _kernels_py.restrict(basis, rows, ncols)
        prod = <long long *> malloc(nr * k * sizeof(long long))
        if prod == NULL:
            raise MemoryError()
        with nogil:
            failed = _matmul_bt_i64(rr, nr, bb, k, ncols, prod)
        if failed:
            return _kernels_py.restrict(basis, rows, ncols)
        cols = [[prod[i * k + j] for j in range(k)] for i in range(nr)]
    finally:
        free(bb)
        free(rr)
        free(prod)
    coeffs = nullspace(cols, k)
    return [[sum(c * v[j] for c, v in zip(cv, basis)) for j in range(ncols)] for cv in coeffs]


cdef int _sandwich_diff_i64(long long *a, long long *b, long long *x, Py_ssize_t n,
                            long long *tmp1, long long *tmp2, long long *out) noexcept nogil:
    # out = a x b^T - b x a^T (all n x n, row-major); returns 1 on overflow
    cdef Py_ssize_t i, j, k
    cdef long long acc, p
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                if qw_mul_ovf(a[i * n + k], x[k * n + j], &p) or __builtin_add_ovf(acc, p, &acc):
                    return 1
            tmp1[i * n + j] = acc
            acc = 0
            for k in range(n):
                if qw_mul_ovf(b[i * n + k], x[k * n + j], &p) or __builtin_add_ovf(acc, p, &acc):
                    return 1
            tmp2[i * n + j] = acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                if qw_mul_ovf(tmp1[i * n + k], b[j * n + k], &p) or __builtin_add_ovf(acc, p, &acc):
                    return 1
                if qw_mul_ovf(tmp2[i * n + k], a[j * n + k], &p) or qw_sub_ovf(acc, p, &acc):
                    return 1
            out[i * n + j] = acc
    return 0


def restrict_pair(basis, a, b, Py_ssize_t n):
    """Same contract as :func:`qwdist._kernels_py.restrict_pair`."""
    cdef Py_ssize_t k = len(basis), nn = n * n, v, r
    cdef long long *bb = NULL
    cdef long long *aa = NULL
    cdef long long *mb = NULL
    cdef long long *work = NULL
    cdef long long *img = NULL
    cdef int failed = 0
    if not k:
        return []
    try:
        try:
            bb = _to_buffer(basis, k, nn)
            aa = _to_buffer(a, n, n)
            mb = _to_buffer(b, n, n)
        except OverflowError:
            return _kernels_py.restrict_pair(basis, a, b, n)
        work = <long long *> malloc(2 * nn * sizeof(long long))
        img = <long long *> malloc(k * nn * sizeof(long long))
        if work == NULL or img == NULL:
            raise MemoryError()
        with nogil:
            for v in range(k):
                if _sandwich_diff_i64(aa, mb, bb + v * nn, n, work, work + nn, img + v * nn):
                    failed = 1
                    break
        if failed:
            return _kernels_py.restrict_pair(basis, a, b, n)
        cols = [[img[v * nn + r] for v in range(k)] for r in range(nn)]
    finally:
        free(bb)
        free(aa)
        free(mb)
        free(work)
        free(img)
    coeffs = nullspace(cols, k)
    return [[sum(c * vec[j] for c, vec in zip(cv, basis)) for j in range(nn)] for cv in coeffs]
