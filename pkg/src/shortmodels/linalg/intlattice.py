"""Integer lattices: Hermite normal form and saturated integer kernels.

All matrices are lists of integer rows; lattices are row spans.
"""

from fractions import Fraction
from math import gcd


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows, ncols=None):
    """Row-style Hermite normal form of the row lattice.

    Returns ``(H, U)`` with ``H = U * rows`` for a unimodular ``U`` (given as
    rows), ``H`` upper echelon with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``; zero rows are kept at the bottom so
    that ``U`` stays square.
    """
    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        # combine all rows below r into row r at column c using gcd steps
        for i in range(r + 1, nrows):
            b = m[i][c]
            if b == 0:
                continue
            a = m[r][c]
            if a == 0:
                m[r], m[i] = m[i], m[r]
                U[r], U[i] = U[i], U[r]
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            ri, rr = m[i], m[r]
            m[r] = [x * u + y * v for u, v in zip(rr, ri)]
            m[i] = [ag * v - bg * u for u, v in zip(rr, ri)]
            ui, ur = U[i], U[r]
            U[r] = [x * u + y * v for u, v in zip(ur, ui)]
            U[i] = [ag * v - bg * u for u, v in zip(ur, ui)]
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-v for v in m[r]]
            U[r] = [-v for v in U[r]]
        piv = m[r][c]
        for i in range(r):
            q = m[i][c] // piv
            if q:
                m[i] = [u - q * v for u, v in zip(m[i], m[r])]
                U[i] = [u - q * v for u, v in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return m, U, pivots


def hnf_basis(rows, ncols=None):
    """Nonzero rows of the HNF (a basis of the row lattice)."""
    H, _, piv = hnf(rows, ncols)
    return H[:len(piv)]


def integer_kernel(M):
    """Basis of the saturated kernel ``{v in Z^N : M v = 0}`` of an integer matrix.

    ``M`` has ``N`` columns.  Computed from the HNF of the transpose: the
    transform rows that map to zero generate the integer left kernel of
    ``M^T``, which is saturated because the transform is unimodular.
    """
    if not M:
        return []
    N = len(M[0])
    MT = [[M[i][j] for i in range(len(M))] for j in range(N)]
    H, U, piv = hnf(MT, len(M))
    return [_positive(U[i]) for i in range(len(piv), N)]


def _positive(v):
    for x in v:
        if x:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


def integer_left_kernel(rows, ncols=None):
    """Saturated basis of ``{c : sum c_i rows_i = 0}``."""
    H, U, piv = hnf(rows, ncols)
    return [U[i] for i in range(len(piv), len(rows))]


def is_saturated(basis, N):
    """True iff the row lattice equals its saturation ``span_Q ∩ Z^N``."""
    if not basis:
        return True
    H = hnf_basis(basis, N)
    if len(H) != len(basis):
        return False
    # the saturation is the kernel of the kernel
    sat = integer_kernel(integer_kernel(H)) if len(H) < N else [
        [1 if i == j else 0 for j in range(N)] for i in range(N)]
    return hnf_basis(sat, N) == H


def rational_hnf(rows, ncols=None):
    """HNF basis of a lattice spanned by rational rows.

    Returns ``(den, H)`` with integer rows ``H`` such that the lattice is
    ``H / den``.
    """
    den = 1
    for r in rows:
        for v in r:
            den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
    ints = [[int(Fraction(v) * den) for v in r] for r in rows]
    return den, hnf_basis(ints, ncols)
