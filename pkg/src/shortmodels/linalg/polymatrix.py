"""Polynomial matrices over K[x]: kernel bases with minimal row degrees.

A polynomial matrix is a list of rows of dense polynomials (tuples, see
:mod:`shortmodels.arith.poly`).  Kernels are left kernels: row vectors
``v`` with ``v M = 0``.
"""

from ..arith import poly as P


def row_degree(row):
    return max((P.degree(c) for c in row), default=-1)


def leading_position(row):
    """Rightmost index attaining the row degree (-1 for the zero row)."""
    d = row_degree(row)
    if d < 0:
        return -1
    for j in range(len(row) - 1, -1, -1):
        if P.degree(row[j]) == d:
            return j
    return -1  # pragma: no cover


def vec_mat(K, v, M):
    """Row vector times polynomial matrix."""
    ncols = len(M[0]) if M else 0
    out = [()] * ncols
    for vi, row in zip(v, M):
        if not vi:
            continue
        for j in range(ncols):
            if row[j]:
                out[j] = P.add(K, out[j], P.mul(K, vi, row[j]))
    return out


def _axpy(K, c, shift, src, dst):
    """dst - c * x^shift * src (row operation)."""
    return [P.sub(K, d, P.shift(K, P.scale(K, c, s), shift)) if s else d
            for d, s in zip(dst, src)]


def weak_popov(K, rows):
    """Mulders–Storjohann reduction to weak Popov form (distinct leading positions)."""
    rows = [list(r) for r in rows if row_degree(r) >= 0]
    changed = True
    while changed:
        changed = False
        seen = {}
        for idx, row in enumerate(rows):
            lp = leading_position(row)
            if lp < 0:
                continue
            if lp in seen:
                jdx = seen[lp]
                a, b = rows[idx], rows[jdx]
                da, db = P.degree(a[lp]), P.degree(b[lp])
                if da < db:
                    idx, jdx, a, b, da, db = jdx, idx, b, a, db, da
                c = K.div(a[lp][-1], b[lp][-1])
                rows[idx] = _axpy(K, c, da - db, b, a)
                changed = True
                break
            seen[lp] = idx
        rows = [r for r in rows if row_degree(r) >= 0]
    return rows


def is_weak_popov(rows):
    lps = [leading_position(r) for r in rows]
    return all(lp >= 0 for lp in lps) and len(set(lps)) == len(lps)


def kernel_basis(K, M, nrows=None):
    """Some K[x]-basis of the left kernel, by unimodular elimination on [M | I]."""
    N = len(M) if nrows is None else nrows
    ncols = len(M[0]) if M else 0
    rows = [(list(M[i]), [(K.one,) if i == j else () for j in range(N)]) for i in range(N)]
    r = 0
    for c in range(ncols):
        while True:
            cand = [i for i in range(r, N) if rows[i][0][c]]
            if not cand:
                break
            piv = min(cand, key=lambda i: (P.degree(rows[i][0][c]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            pm, pi = rows[r]
            done = True
            for i in range(r + 1, N):
                e = rows[i][0][c]
                if not e:
                    continue
                q, rem = P.divmod_(K, e, pm[c])
                m_i, i_i = rows[i]
                rows[i] = ([P.sub(K, a, P.mul(K, q, b)) for a, b in zip(m_i, pm)],
                           [P.sub(K, a, P.mul(K, q, b)) for a, b in zip(i_i, pi)])
                if rem:
                    done = False
            if done:
                r += 1
                break
        if r == N:
            break
    return [rows[i][1] for i in range(r, N)]


def polymatrix_min_kernel(K, M, nrows=None):
    """Minimal-degree basis of the left kernel of ``M`` over ``K[x]``.

    Returns ``(basis, profile)``: rows in weak Popov form sorted by degree
    (then leading position) and the non-decreasing list of row degrees.
    """
    N = len(M) if nrows is None else nrows
    if not M or not M[0]:
        basis = [[(K.one,) if i == j else () for j in range(N)] for i in range(N)]
        return basis, [0] * N
    ker = kernel_basis(K, M, N)
    red = weak_popov(K, ker)
    red.sort(key=lambda r: (row_degree(r), leading_position(r)))
    return red, [row_degree(r) for r in red]
