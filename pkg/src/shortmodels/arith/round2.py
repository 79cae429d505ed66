"""Lattices over a Euclidean domain and the Round-2 maximal-order algorithm.

The same engine serves number fields (``R = Z``, primes ``p``) and the
place at infinity of a function field (``R = K[z]`` with ``z = 1/x`` and
the prime ``z``).

An algebra of dimension ``n`` over ``Frac(R)`` is described by structure
constants ``e_i e_j = (1/D) sum_k C[i][j][k] e_k`` with ``C`` in ``R``.
Elements are pairs ``(den, vec)`` meaning ``vec / den``; a lattice is
``(den, H)`` with ``H`` an ``n x n`` Hermite normal form over ``R``.
"""

from math import gcd as igcd

from . import poly as P
from .fields import PrimeField
from .algebra import Algebra
from ..linalg import matrix as LA


# --- Euclidean domains ---------------------------------------------------------

class IntegerPID:
    zero = 0
    one = 1

    def __repr__(self):
        return "Z"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def divmod(self, a, b):
        return divmod(a, b)

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division")
        return q

    def try_div(self, a, b):
        q, r = divmod(a, b)
        return None if r else q

    def normalize(self, a):
        """``(normal form, unit)`` with ``a * unit = normal form``."""
        return (a, 1) if a >= 0 else (-a, -1)

    def xgcd(self, a, b):
        x0, y0, x1, y1 = 1, 0, 0, 1
        while b:
            q, r = divmod(a, b)
            a, b = b, r
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        return a, x0, y0

    def gcd(self, a, b):
        return igcd(a, b)

    def from_int(self, k):
        return int(k)


class PolyPID:
    """``K[z]`` for a field ``K``."""

    def __init__(self, K):
        self.K = K
        self.zero = ()
        self.one = (K.one,)

    def __repr__(self):
        return f"{self.K!r}[z]"

    def add(self, a, b):
        return P.add(self.K, a, b)

    def sub(self, a, b):
        return P.sub(self.K, a, b)

    def neg(self, a):
        return P.neg(self.K, a)

    def mul(self, a, b):
        return P.mul(self.K, a, b)

    def is_zero(self, a):
        return not a

    def divmod(self, a, b):
        return P.divmod_(self.K, a, b)

    def exact_div(self, a, b):
        return P.div_exact(self.K, a, b)

    def try_div(self, a, b):
        q, r = P.divmod_(self.K, a, b)
        return None if r else q

    def normalize(self, a):
        if not a:
            return a, self.one
        u = self.K.inv(a[-1])
        return P.scale(self.K, u, a), (u,)

    def xgcd(self, a, b):
        return P.xgcd(self.K, a, b)

    def gcd(self, a, b):
        return P.gcd(self.K, a, b)

    def from_int(self, k):
        return P.const(self.K, self.K.from_int(k))


class LocalPrime:
    """A prime of ``R`` with its residue field and reduction maps."""

    def __init__(self, R, pi, F, red, lift):
        self.R, self.pi, self.F, self.red, self.lift = R, pi, F, red, lift

    @classmethod
    def integer(cls, p):
        return cls(IntegerPID(), p, PrimeField(p), lambda a: a % p, lambda c: int(c))

    @classmethod
    def at_zero(cls, K):
        """The prime ``z`` of ``K[z]``."""
        R = PolyPID(K)
        return cls(R, (K.zero, K.one), K,
                   lambda a: a[0] if a else K.zero,
                   lambda c: P.const(K, c))

    def valuation(self, a):
        if self.R.is_zero(a):
            return None
        v = 0
        while True:
            q = self.R.try_div(a, self.pi)
            if q is None:
                return v
            a = q
            v += 1


# --- lattices ------------------------------------------------------------------

def hnf_rows(R, rows, ncols):
    """Nonzero rows of a Hermite normal form of the row module over ``R``."""
    m = [list(r) for r in rows]
    nrows = len(m)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            b = m[i][c]
            if R.is_zero(b):
                continue
            a = m[r][c]
            if R.is_zero(a):
                m[r], m[i] = m[i], m[r]
                continue
            g, x, y = R.xgcd(a, b)
            ag, bg = R.exact_div(a, g), R.exact_div(b, g)
            rr, ri = m[r], m[i]
            m[r] = [R.add(R.mul(x, u), R.mul(y, v)) for u, v in zip(rr, ri)]
            m[i] = [R.sub(R.mul(ag, v), R.mul(bg, u)) for u, v in zip(rr, ri)]
        if R.is_zero(m[r][c]):
            continue
        _, unit = R.normalize(m[r][c])
        m[r] = [R.mul(unit, v) for v in m[r]]
        piv = m[r][c]
        for i in range(r):
            q, _ = R.divmod(m[i][c], piv)
            if not R.is_zero(q):
                m[i] = [R.sub(u, R.mul(q, v)) for u, v in zip(m[i], m[r])]
        r += 1
    return m[:r]


def _lcm(R, a, b):
    g = R.gcd(a, b)
    return R.normalize(R.exact_div(R.mul(a, b), g))[0]


class Lattice:
    """Full-rank ``R``-lattice ``(1/den) rowspan(H)``."""

    def __init__(self, R, den, H):
        self.R, self.den, self.H = R, den, H
        self.n = len(H)

    def __eq__(self, other):
        return self.den == other.den and self.H == other.H

    def rows(self):
        return [(self.den, list(h)) for h in self.H]

    @classmethod
    def from_generators(cls, R, n, gens):
        den = R.one
        for d, _ in gens:
            den = _lcm(R, den, d)
        rows = [[R.mul(R.exact_div(den, d), x) for x in v] for d, v in gens]
        H = hnf_rows(R, rows, n)
        if len(H) != n:
            raise ArithmeticError("generators do not span a full-rank lattice")
        g = den
        for row in H:
            for x in row:
                if not R.is_zero(x):
                    g = R.gcd(g, x)
        g = R.normalize(g)[0]
        if g != R.one:
            den = R.exact_div(den, g)
            H = [[R.exact_div(x, g) for x in row] for row in H]
        den = R.normalize(den)[0]
        return cls(R, den, H)

    def coords(self, elem):
        """``x`` in ``R^n`` with ``elem = x H / den``, or ``None``."""
        R = self.R
        de, v = elem
        w = []
        for x in v:
            t = R.try_div(R.mul(x, self.den), de)
            if t is None:
                return None
            w.append(t)
        x = []
        for k in range(self.n):
            piv = self.H[k][k]
            c = R.try_div(w[k], piv)
            if c is None:
                return None
            x.append(c)
            if not R.is_zero(c):
                w = [R.sub(a, R.mul(c, b)) for a, b in zip(w, self.H[k])]
        if any(not R.is_zero(a) for a in w):
            return None
        return x

    def contains(self, elem):
        return self.coords(elem) is not None

    def index_in(self, other):
        """``det`` of this lattice relative to ``other`` as (num, den) products of diagonals."""
        return self.H, other.H


class AlgebraEngine:
    """Multiplication of lattice elements in an algebra given by structure constants."""

    def __init__(self, R, n, D, C):
        self.R, self.n, self.D, self.C = R, n, D, C

    def mul(self, a, b):
        R = self.R
        da, va = a
        db, vb = b
        n = self.n
        out = [R.zero] * n
        for i in range(n):
            if R.is_zero(va[i]):
                continue
            for j in range(n):
                if R.is_zero(vb[j]):
                    continue
                f = R.mul(va[i], vb[j])
                Cij = self.C[i][j]
                for k in range(n):
                    if not R.is_zero(Cij[k]):
                        out[k] = R.add(out[k], R.mul(f, Cij[k]))
        return (R.mul(R.mul(da, db), self.D), out)

    def ring_closure(self, L, max_rounds=64):
        """Smallest ring (lattice closed under products) containing ``L`` and 1."""
        R = self.R
        one = (R.one, [R.one] + [R.zero] * (self.n - 1))
        for _ in range(max_rounds):
            gens = L.rows() + [one]
            rows = L.rows()
            for i in range(len(rows)):
                for j in range(i, len(rows)):
                    gens.append(self.mul(rows[i], rows[j]))
            L2 = Lattice.from_generators(R, self.n, gens)
            if L2 == L:
                return L
            L = L2
        raise ArithmeticError("ring closure did not stabilise")

    def residue_table(self, O, prime):
        """Structure constants of ``O / pi O`` on the basis of ``O``."""
        rows = O.rows()
        n = self.n
        table = []
        for i in range(n):
            trow = []
            for j in range(n):
                c = O.coords(self.mul(rows[i], rows[j]))
                if c is None:
                    raise ArithmeticError("lattice is not a ring")
                trow.append([prime.red(x) for x in c])
            table.append(trow)
        one = O.coords((self.R.one, [self.R.one] + [self.R.zero] * (n - 1)))
        return table, [prime.red(x) for x in one]

    def radical(self, O, prime):
        """Basis (over the residue field) of the radical of ``O / pi O``."""
        F = prime.F
        table, one = self.residue_table(O, prime)
        A = Algebra(F, table, one)
        q = F.order
        e = q
        while e < self.n:
            e *= q
        images = [A.pow(b, e) for b in A.basis()]
        return LA.left_kernel(F, images, self.n)

    def multiplier_step(self, O, prime):
        """One Round-2 enlargement at ``prime``; returns the new order or ``None``."""
        R, F, n = self.R, prime.F, self.n
        rad = self.radical(O, prime)
        if not rad:
            return None
        rows = O.rows()
        gens = []
        for v in rad:
            vec = [R.zero] * n
            for c, (d, h) in zip(v, rows):
                if not F.is_zero(c):
                    vec = [R.add(a, R.mul(prime.lift(c), b)) for a, b in zip(vec, h)]
            gens.append((O.den, vec))
        gens += [(O.den, [R.mul(prime.pi, x) for x in h]) for _, h in rows]
        I = Lattice.from_generators(R, n, gens)
        Irows = I.rows()
        # b in F^n with sum_i b_i w_i * gamma_j in pi I for all j
        cols = []
        for i in range(n):
            big = []
            for g in Irows:
                c = I.coords(self.mul(rows[i], g))
                if c is None:
                    raise ArithmeticError("radical is not an ideal")
                big.extend(prime.red(x) for x in c)
            cols.append(big)
        ker = LA.left_kernel(F, cols, n)
        if not ker:
            return None
        new = list(rows)
        for b in ker:
            vec = [R.zero] * n
            for c, (_, h) in zip(b, rows):
                if not F.is_zero(c):
                    vec = [R.add(a, R.mul(prime.lift(c), x)) for a, x in zip(vec, h)]
            new.append((R.mul(O.den, prime.pi), vec))
        O2 = Lattice.from_generators(R, n, new)
        return None if O2 == O else O2

    def maximalize(self, O, prime, max_steps=200):
        for _ in range(max_steps):
            O2 = self.multiplier_step(O, prime)
            if O2 is None:
                return O
            O = O2
        raise ArithmeticError("Round 2 did not terminate")
