"""Dense exact linear algebra over a field object.

Matrices are lists of rows (lists of field elements).  Prime fields are
routed to the compiled row-reduction kernel.
"""

from .. import kernels
from ..arith.fields import PrimeField


def zeros(F, nrows, ncols):
    return [[F.zero] * ncols for _ in range(nrows)]


def identity(F, n):
    out = zeros(F, n, n)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(F, A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = [F.zero] * ncols
        for k in range(inner):
            a = row[k]
            if F.is_zero(a):
                continue
            bk = B[k]
            for j in range(ncols):
                new[j] = F.add(new[j], F.mul(a, bk[j]))
        out.append(new)
    return out


def matvec(F, A, v):
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(x):
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def rref(F, M, ncols=None):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if isinstance(F, PrimeField):
        rows, piv = kernels.rref_mod_p([[x % F.p for x in r] for r in M], ncols, F.p)
        return [list(r) for r in rows], list(piv)
    m = [list(r) for r in M]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = F.inv(row[c])
        if not F.is_one(inv):
            for j in range(c, ncols):
                row[j] = F.mul(row[j], inv)
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if not F.is_zero(f):
                    other = m[i]
                    for j in range(c, ncols):
                        if not F.is_zero(row[j]):
                            other[j] = F.sub(other[j], F.mul(f, row[j]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(F, M, ncols=None):
    return len(rref(F, M, ncols)[1])


def kernel(F, M, ncols=None):
    """Basis of the right kernel {v : M v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    rows, pivots = rref(F, M, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(rows, pivots):
            if not F.is_zero(row[free]):
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def left_kernel(F, M, nrows=None):
    """Basis of {v : v M = 0}."""
    ncols = len(M[0]) if M else 0
    if nrows is None:
        nrows = len(M)
    return kernel(F, transpose(M, nrows) if ncols else [], nrows)


def rank_kernel_field(F, M, ncols=None):
    """``(rank, right kernel basis)``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    ker = kernel(F, M, ncols)
    return ncols - len(ker), ker


def solve(F, A, b):
    """One solution x of A x = b, or None if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    rows, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


def solve_left(F, M, v):
    """One x with x M = v, or None."""
    return solve(F, transpose(M), v)


def det(F, M):
    n = len(M)
    m = [list(r) for r in M]
    d = F.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = F.neg(d)
        pv = m[c][c]
        d = F.mul(d, pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            f = m[i][c]
            if F.is_zero(f):
                continue
            f = F.mul(f, inv)
            for j in range(c, n):
                m[i][j] = F.sub(m[i][j], F.mul(f, m[c][j]))
    return d


def inverse(F, M):
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(F, n))]
    rows, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows]


def row_space_rref(F, M, ncols=None):
    """Canonical form of the row space (for subspace equality tests)."""
    rows, _ = rref(F, M, ncols)
    return [tuple(r) for r in rows]


def charpoly(R, A):
    """Characteristic polynomial ``det(T I - A)`` over a commutative ring.

    Division-free (Berkowitz).  ``R`` needs ``zero``, ``one``, ``add``,
    ``mul``, ``neg``.  Returns coefficients lowest degree first (monic).
    """
    n = len(A)
    vect = [R.one]
    for r in range(n):
        a = A[r][r]
        row = A[r][:r]
        col = [A[i][r] for i in range(r)]
        t = [R.one, R.neg(a)]
        v = col
        for _ in range(r):
            acc = R.zero
            for x, y in zip(row, v):
                acc = R.add(acc, R.mul(x, y))
            t.append(R.neg(acc))
            nv = []
            for i in range(r):
                s = R.zero
                for x, y in zip(A[i][:r], v):
                    s = R.add(s, R.mul(x, y))
                nv.append(s)
            v = nv
        new = []
        for i in range(r + 2):
            s = R.zero
            for j in range(min(i, r) + 1):
                s = R.add(s, R.mul(t[i - j], vect[j]))
            new.append(s)
        vect = new
    return list(reversed(vect))
