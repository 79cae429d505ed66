"""LLL lattice reduction.

* :func:`lll_reduce` — exact integral LLL on an integer basis.
* :func:`lll_gram` — the same algorithm driven by an integer Gram matrix,
  returning the unimodular transform.
* :func:`float_gram_lll` — reduction of a real positive-definite Gram matrix
  given with finite precision: fixed-point rounding to an integer Gram,
  integral LLL, then certification of the transformed Gram at higher
  precision.  Raises :class:`PrecisionError` when the budget is too small.
* :func:`is_lll_reduced` — exact check of size reduction and the Lovász
  condition.
"""

from fractions import Fraction

import mpmath

DEFAULT_DELTA = Fraction(99, 100)


class PrecisionError(ArithmeticError):
    pass


class LinearDependenceError(ValueError):
    pass


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_div(a, b):
    """Nearest integer to a/b (b > 0), ties toward +infinity."""
    return (2 * a + b) // (2 * b)


class _IntegralLLL:
    """Cohen's integral LLL (all Gram–Schmidt data kept as exact integers).

    Works on a basis ``B`` and/or a Gram matrix ``G``; ``U`` tracks the
    transform from the input rows when requested.
    """

    def __init__(self, n, B=None, G=None, track=False, delta=DEFAULT_DELTA):
        self.n = n
        self.B = [list(b) for b in B] if B is not None else None
        self.G = [list(r) for r in G] if G is not None else None
        self.U = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
        delta = Fraction(delta)
        if not (Fraction(1, 4) < delta <= 1):
            raise ValueError("delta must lie in (1/4, 1]")
        self.da, self.db = delta.numerator, delta.denominator
        # 1-indexed arrays as in the textbook presentation
        self.d = [0] * (n + 1)
        self.lam = [[0] * (n + 1) for _ in range(n + 1)]

    def ip(self, i, j):
        if self.B is not None:
            return _dot(self.B[i - 1], self.B[j - 1])
        return self.G[i - 1][j - 1]

    def _rowop(self, k, l, q):
        """b_k <- b_k - q b_l."""
        if self.B is not None:
            bl = self.B[l - 1]
            self.B[k - 1] = [x - q * y for x, y in zip(self.B[k - 1], bl)]
        if self.G is not None:
            G = self.G
            k0, l0 = k - 1, l - 1
            gkk = G[k0][k0] - 2 * q * G[k0][l0] + q * q * G[l0][l0]
            for i in range(self.n):
                G[k0][i] -= q * G[l0][i]
            G[k0][k0] = gkk
            for i in range(self.n):
                G[i][k0] = G[k0][i]
        if self.U is not None:
            ul = self.U[l - 1]
            self.U[k - 1] = [x - q * y for x, y in zip(self.U[k - 1], ul)]

    def _swap_rows(self, k):
        a, b = k - 1, k - 2
        if self.B is not None:
            self.B[a], self.B[b] = self.B[b], self.B[a]
        if self.G is not None:
            G = self.G
            G[a], G[b] = G[b], G[a]
            for row in G:
                row[a], row[b] = row[b], row[a]
        if self.U is not None:
            self.U[a], self.U[b] = self.U[b], self.U[a]

    def red(self, k, l):
        d, lam = self.d, self.lam
        if 2 * abs(lam[k][l]) > d[l]:
            q = _round_div(lam[k][l], d[l])
            self._rowop(k, l, q)
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(self, k, kmax):
        d, lam = self.d, self.lam
        self._swap_rows(k)
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        Bv = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (Bv * t + lm * lam[i][k]) // d[k]
        d[k - 1] = Bv

    def run(self):
        n = self.n
        if n == 0:
            return self
        d, lam = self.d, self.lam
        d[0] = 1
        d[1] = self.ip(1, 1)
        if d[1] <= 0:
            raise LinearDependenceError("zero or non-positive first vector")
        k, kmax = 2, 1
        da, db = self.da, self.db
        while k <= n:
            if k > kmax:
                kmax = k
                for j in range(1, k + 1):
                    u = self.ip(k, j)
                    for i in range(1, j):
                        u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                    if j < k:
                        lam[k][j] = u
                    else:
                        if u <= 0:
                            raise LinearDependenceError("basis vectors are dependent")
                        d[k] = u
            while True:
                self.red(k, k - 1)
                lm = lam[k][k - 1]
                if db * d[k] * d[k - 2] < da * d[k - 1] * d[k - 1] - db * lm * lm:
                    self.swap(k, kmax)
                    k = max(2, k - 1)
                else:
                    break
            for l in range(k - 2, 0, -1):
                self.red(k, l)
            k += 1
        return self


def lll_reduce(B, delta=DEFAULT_DELTA, return_transform=False):
    """LLL-reduce the rows of an integer basis (rows must be independent)."""
    B = [[int(x) for x in b] for b in B]
    if not B:
        return ([], []) if return_transform else []
    alg = _IntegralLLL(len(B), B=B, track=return_transform, delta=delta).run()
    if return_transform:
        return alg.B, alg.U
    return alg.B


def lll_gram(G, delta=DEFAULT_DELTA):
    """Integral LLL on an integer positive-definite Gram matrix.

    Returns ``(U, G')`` with ``G' = U G U^T`` reduced.
    """
    n = len(G)
    alg = _IntegralLLL(n, G=[[int(x) for x in r] for r in G], track=True, delta=delta).run()
    return alg.U, alg.G


def gram_schmidt_exact(B):
    """Exact rational Gram–Schmidt: ``(mu, bstar_norms_squared)``."""
    n = len(B)
    G = [[Fraction(_dot(B[i], B[j])) for j in range(n)] for i in range(n)]
    return gram_schmidt_from_gram(G)


def gram_schmidt_from_gram(G):
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    r = [[Fraction(0)] * n for _ in range(n)]
    bn = [Fraction(0)] * n
    for i in range(n):
        for j in range(i + 1):
            s = Fraction(G[i][j])
            for k in range(j):
                s -= mu[j][k] * r[i][k]
            r[i][j] = s
            if j < i:
                mu[i][j] = s / bn[j]
            else:
                bn[i] = s
    return mu, bn


def is_lll_reduced(B, delta=DEFAULT_DELTA, gram=False):
    """Exact LLL check (size reduction |mu| <= 1/2 and Lovász)."""
    if gram:
        mu, bn = gram_schmidt_from_gram(B)
    else:
        mu, bn = gram_schmidt_exact(B)
    n = len(bn)
    delta = Fraction(delta)
    for i in range(n):
        if bn[i] <= 0:
            return False
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if bn[k] < (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            return False
    return True


def float_gram_lll(G, prec_bits, delta=DEFAULT_DELTA):
    """Reduce a real Gram matrix known to ``prec_bits`` bits.

    ``G`` holds mpmath numbers (or anything ``mpmath.mpf`` accepts).  The
    matrix is scaled by ``2^prec_bits`` and rounded to integers; integral LLL
    produces a unimodular transform ``U``.  The transformed real Gram is then
    re-evaluated and checked for size reduction (with slack ``0.51``) and the
    Lovász condition at ``delta - 0.01``, accounting for the rounding error.
    Returns ``U``.
    """
    n = len(G)
    if n == 0:
        return []
    with mpmath.workprec(prec_bits + 64):
        scale = mpmath.mpf(2) ** prec_bits
        Gi = [[int(mpmath.nint(mpmath.mpf(G[i][j]) * scale)) for j in range(n)] for i in range(n)]
    # symmetrize (rounding is symmetric already, but be explicit)
    for i in range(n):
        for j in range(i):
            Gi[i][j] = Gi[j][i]
    try:
        U, _ = lll_gram(Gi, delta)
    except LinearDependenceError as exc:
        raise PrecisionError("Gram matrix not positive definite at this precision") from exc
    with mpmath.workprec(prec_bits + 64):
        Gm = mpmath.matrix([[mpmath.mpf(G[i][j]) for j in range(n)] for i in range(n)])
        Um = mpmath.matrix(U)
        T = Um * Gm * Um.T
        # Gram–Schmidt on the transformed Gram in floating point
        mu = [[mpmath.mpf(0)] * n for _ in range(n)]
        bn = [mpmath.mpf(0)] * n
        r = [[mpmath.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = T[i, j]
                for k in range(j):
                    s -= mu[j][k] * r[i][k]
                r[i][j] = s
                if j < i:
                    mu[i][j] = s / bn[j]
                else:
                    bn[i] = s
        eps = mpmath.mpf(2) ** (-(prec_bits // 2))
        dl = mpmath.mpf(delta.numerator) / delta.denominator - mpmath.mpf("0.01")
        for i in range(n):
            if bn[i] <= eps:
                raise PrecisionError("Gram–Schmidt norm lost to rounding")
            for j in range(i):
                if abs(mu[i][j]) > mpmath.mpf("0.51"):
                    raise PrecisionError("size reduction not certified")
        for k in range(1, n):
            if bn[k] < (dl - mu[k][k - 1] ** 2) * bn[k - 1]:
                raise PrecisionError("Lovász condition not certified")
    return U
