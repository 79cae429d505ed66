# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prime-field kernels (p < 2**31)."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


def rref_mod_p(rows, Py_ssize_t ncols, i64 p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef i64 f, inv, t
    cdef i64 *m
    pivots = []
    if nrows == 0 or ncols == 0:
        return [], pivots
    m = <i64 *> malloc(nrows * ncols * sizeof(i64))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            inv = _powmod(m[r * ncols + c], p - 2, p)
            if inv != 1:
                for j in range(c, ncols):
                    m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    if m[r * ncols + j] != 0:
                        m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                        if m[i * ncols + j] < 0:
                            m[i * ncols + j] += p
            pivots.append(c)
            r += 1
        out = []
        for i in range(r):
            out.append([m[i * ncols + j] for j in range(ncols)])
        return out, pivots
    finally:
        free(m)


def rank_mod_p(rows, Py_ssize_t ncols, i64 p):
    return len(rref_mod_p(rows, ncols, p)[1])


cdef i64 _powmod(i64 b, i64 e, i64 p):
    cdef i64 r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def polmul_mod_p(a, b, i64 p):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, n
    cdef i64 x
    cdef i64 *bb
    cdef i64 *out
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    out = <i64 *> malloc(n * sizeof(i64))
    bb = <i64 *> malloc(lb * sizeof(i64))
    if out == NULL or bb == NULL:
        free(out)
        free(bb)
        raise MemoryError()
    try:
        for i in range(n):
            out[i] = 0
        for j in range(lb):
            bb[j] = b[j]
        for i in range(la):
            x = a[i]
            if x == 0:
                continue
            for j in range(lb):
                out[i + j] = (out[i + j] + x * bb[j]) % p
        while n > 0 and out[n - 1] == 0:
            n -= 1
        return [out[i] for i in range(n)]
    finally:
        free(out)
        free(bb)


def series_mul_mod_p(a, b, Py_ssize_t m, i64 p):
    cdef Py_ssize_t la = min(len(a), m), lb = min(len(b), m), i, j, top
    cdef i64 x
    cdef i64 *bb
    cdef i64 *out
    if m <= 0:
        return []
    out = <i64 *> malloc(m * sizeof(i64))
    bb = <i64 *> malloc((lb + 1) * sizeof(i64))
    if out == NULL or bb == NULL:
        free(out)
        free(bb)
        raise MemoryError()
    try:
        for i in range(m):
            out[i] = 0
        for j in range(lb):
            bb[j] = b[j]
        for i in range(la):
            x = a[i]
            if x == 0:
                continue
            top = min(lb, m - i)
            for j in range(top):
                out[i + j] = (out[i + j] + x * bb[j]) % p
        return [out[i] for i in range(m)]
    finally:
        free(out)
        free(bb)
