"""Integral closures of F_q[x] in function fields and their Maroni reduction.

An order is stored as a multiplication table over ``K[x]``: ``table[i][j]``
is the coordinate vector (``n`` dense polynomials) of ``w_i w_j``, with
``w_0 = 1``.  Elements of the order are coordinate vectors of polynomials.

Pole orders above infinity are measured in units of ``x``: ``a(w)`` is the
least integer ``a`` with ``w / x^a`` integral at every place over infinity.
A basis is *reduced* when its pole orders add up to ``n + g - 1``; the
pole orders of a reduced basis are the Maroni invariants.
"""

from dataclasses import dataclass, field
from math import gcd

from ..arith import poly as P
from ..arith.round2 import AlgebraEngine, Lattice, LocalPrime
from ..linalg import matrix as LA


class CurveInputError(ValueError):
    pass


class GenusMismatchError(ArithmeticError):
    pass


class PolyRing:
    """``K[x]`` as a commutative ring (for division-free determinants)."""

    def __init__(self, K):
        self.K = K
        self.zero = ()
        self.one = (K.one,)

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


@dataclass
class CurveInput:
    """A cover ``C -> P^1`` over a finite field ``K``.

    ``kind`` is ``"superelliptic"`` (``y^n = f(x)``, ``f`` squarefree,
    characteristic prime to ``n``) or ``"explicit"`` (an integral basis
    given by its multiplication table, ``w_0 = 1``).
    """

    K: object
    kind: str
    n: int
    f: tuple = None
    table: list = None
    genus: int = None


@dataclass
class FunctionFieldOrder:
    K: object
    n: int
    table: list
    genus: int
    a: list = None
    transform: list = None          # rows: new basis in terms of the input basis
    curve: CurveInput = field(default=None, repr=False)

    # --- arithmetic in the order ------------------------------------------------
    def zero(self):
        return [()] * self.n

    def one(self):
        return [(self.K.one,)] + [()] * (self.n - 1)

    def basis_vector(self, i):
        v = self.zero()
        v[i] = (self.K.one,)
        return v

    def add(self, u, v):
        return [P.add(self.K, a, b) for a, b in zip(u, v)]

    def sub(self, u, v):
        return [P.sub(self.K, a, b) for a, b in zip(u, v)]

    def scale(self, c, u):
        """Multiply by a polynomial ``c`` in ``K[x]``."""
        return [P.mul(self.K, c, a) for a in u]

    def mul(self, u, v):
        K, n = self.K, self.n
        out = [()] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                f = P.mul(K, u[i], v[j])
                row = self.table[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] = P.add(K, out[k], P.mul(K, f, row[k]))
        return out

    def pow(self, u, e):
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, u)
            e >>= 1
            if e:
                u = self.mul(u, u)
        return out

    def is_zero(self, u):
        return all(not c for c in u)

    def mult_matrix(self, u):
        """Rows are the coordinates of ``u * w_i``."""
        return [self.mul(u, self.basis_vector(i)) for i in range(self.n)]

    def charpoly(self, u):
        return LA.charpoly(PolyRing(self.K), self.mult_matrix(u))

    def norm(self, u):
        cp = self.charpoly(u)
        c0 = cp[0]
        return P.neg(self.K, c0) if self.n % 2 else c0

    def trace(self, u):
        K = self.K
        acc = ()
        for i in range(self.n):
            if u[i]:
                t = ()
                for k in range(self.n):
                    t = P.add(K, t, self.table[i][k][k])
                acc = P.add(K, acc, P.mul(K, u[i], t))
        return acc

    def discriminant(self):
        """``det(Tr(w_i w_j))`` in ``K[x]``."""
        R = PolyRing(self.K)
        n = self.n
        G = [[self.trace(self.table[i][j]) for j in range(n)] for i in range(n)]
        cp = LA.charpoly(R, G)
        c0 = cp[0]
        return P.neg(self.K, c0) if n % 2 else c0

    def pole_order(self, u):
        return pole_order(self, u)

    def reduce_mod(self, u, F):
        """Coordinates of ``u`` modulo ``F(x)``."""
        return [P.mod(self.K, c, F) for c in u]


# --- construction ----------------------------------------------------------------

def superelliptic_genus(n, D):
    return ((n - 1) * D - n - gcd(n, D)) // 2 + 1


def integral_basis(c):
    """Integral closure of ``K[x]`` for a supported :class:`CurveInput`."""
    K, n = c.K, c.n
    if n < 2:
        raise CurveInputError("degree n must be at least 2")
    if c.kind == "superelliptic":
        f = P.normalize(K, c.f or ())
        if P.degree(f) < 1:
            raise CurveInputError("f must be non-constant")
        if n % K.char == 0:
            raise CurveInputError("characteristic divides n")
        if P.degree(P.gcd(K, f, P.derivative(K, f))) > 0:
            raise CurveInputError("f is not squarefree")
        g = superelliptic_genus(n, P.degree(f))
        if c.genus is not None and c.genus != g:
            raise GenusMismatchError(f"declared genus {c.genus} but the curve has genus {g}")
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                v = [()] * n
                s = i + j
                v[s % n] = (K.one,) if s < n else f
                row.append(v)
            table.append(row)
        T = [[(K.one,) if i == j else () for j in range(n)] for i in range(n)]
        return FunctionFieldOrder(K, n, table, g, None, T, c)
    if c.kind == "explicit":
        if c.table is None or c.genus is None:
            raise CurveInputError("explicit input needs a multiplication table and a genus")
        table = [[[P.normalize(K, tuple(p)) for p in v] for v in row] for row in c.table]
        if len(table) != n or any(len(row) != n or any(len(v) != n for v in row) for row in table):
            raise CurveInputError("multiplication table has the wrong shape")
        o = FunctionFieldOrder(K, n, table, c.genus, None,
                               [[(K.one,) if i == j else () for j in range(n)] for i in range(n)], c)
        if o.table[0] != [o.basis_vector(j) for j in range(n)]:
            raise CurveInputError("w_0 must be the unit")
        if not o.discriminant():
            raise CurveInputError("basis is degenerate or the extension is inseparable")
        return o
    raise CurveInputError(f"unsupported curve kind {c.kind!r}")


def pole_order(o, u):
    """Least ``a`` with ``u / x^a`` integral above infinity (Newton polygon of the
    characteristic polynomial)."""
    cp = o.charpoly(u)
    n = o.n
    best = None
    for k in range(1, n + 1):
        c = cp[n - k]
        if c:
            v = -((-P.degree(c)) // k)
            best = v if best is None else max(best, v)
    if best is None:
        raise ValueError("pole order of a nilpotent element")
    return best


# --- Maroni reduction ----------------------------------------------------------------

def _engine_at_infinity(o):
    """Structure constants of the algebra over ``K(z)``, ``z = 1/x``, in the w-basis."""
    K, n = o.K, o.n
    M = 0
    for row in o.table:
        for v in row:
            for c in v:
                M = max(M, P.degree(c))
    C = []
    for i in range(n):
        Ci = []
        for j in range(n):
            Cij = []
            for c in o.table[i][j]:
                if not c:
                    Cij.append(())
                else:
                    rev = tuple(reversed(c))
                    Cij.append(P.shift(K, rev, M - P.degree(c)))
            Ci.append(Cij)
        C.append(Ci)
    D = P.x_power(K, M)
    return AlgebraEngine(LocalPrime.at_zero(K).R, n, D, C)


def _to_z(K, c, a):
    """``z^a c(1/z)`` for a polynomial ``c`` with ``deg c <= a``."""
    if not c:
        return ()
    return P.shift(K, tuple(reversed(c)), a - P.degree(c))


def _zvec(o, u, a):
    """``z^a u`` as an element ``(den, vec)`` over ``K[z]``."""
    K = o.K
    top = max((P.degree(c) for c in u), default=0)
    s = max(a, top)
    vec = [_to_z(K, c, s) for c in u]
    den = P.x_power(K, s - a)
    return (den, vec)


def maroni_reduce(o):
    """Transform a basis of the integral closure into a reduced basis.

    The integral closure ``O_inf`` of ``K[z]`` (``z = 1/x``) is computed with
    the Round-2 engine at the prime ``z``.  A basis ``w`` with pole orders
    ``a_i`` is reduced iff the elements ``z^{a_i} w_i`` are independent
    modulo ``z O_inf``; otherwise a dependency gives a replacement of smaller
    pole order.  Returns a new order whose basis is sorted by pole order, with
    ``w_0 = 1``, the new multiplication table and the transform from the input
    basis.  Raises :class:`GenusMismatchError` when the pole orders do not add
    up to ``n + g - 1``.
    """
    K, n = o.K, o.n
    prime = LocalPrime.at_zero(K)
    R = prime.R
    E = _engine_at_infinity(o)
    basis = [o.basis_vector(i) for i in range(n)]       # current basis in w-coordinates
    a = [pole_order(o, w) for w in basis]
    L = Lattice.from_generators(R, n, [_zvec(o, w, ai) for w, ai in zip(basis, a)])
    Oinf = E.maximalize(E.ring_closure(L), prime)

    def integral(u, s):
        return Oinf.contains(_zvec(o, u, s))

    for _ in range(10 * (sum(a) + n) + 10):
        U = []
        for w, ai in zip(basis, a):
            c = Oinf.coords(_zvec(o, w, ai))
            if c is None:
                raise ArithmeticError("element not integral at infinity")
            U.append([prime.red(x) for x in c])
        ker = LA.left_kernel(K, U, n)
        if not ker:
            break
        cvec = ker[0]
        j = max((i for i in range(n) if not K.is_zero(cvec[i])), key=lambda i: (a[i], i))
        inv = K.inv(cvec[j])
        new = o.zero()
        for i in range(n):
            if K.is_zero(cvec[i]):
                continue
            coef = P.shift(K, (K.mul(cvec[i], inv),), a[j] - a[i])
            new = o.add(new, o.scale(coef, basis[i]))
        s = a[j] - 1
        while s > 0 and integral(new, s - 1):
            s -= 1
        basis[j] = new
        a[j] = s
    else:  # pragma: no cover
        raise ArithmeticError("Maroni reduction did not terminate")

    order = sorted(range(n), key=lambda i: (a[i], i))
    basis = [basis[i] for i in order]
    a = [a[i] for i in order]
    if a[0] != 0 or (n > 1 and a[1] == 0):
        raise ArithmeticError("constant field is not K: more than one pole-free basis element")
    basis[0] = o.one()
    if sum(a) != n + o.genus - 1:
        raise GenusMismatchError(
            f"pole orders sum to {sum(a)} but n + g - 1 = {n + o.genus - 1}")
    return _rebase(o, basis, a)


def _poly_matrix_inverse(K, T):
    """Inverse of a unimodular polynomial matrix (rows) by elimination over K(x)."""
    from ..arith.fields import RationalFunctionField
    Fx = RationalFunctionField(K)
    n = len(T)
    M = [[Fx.make(c) for c in row] for row in T]
    Mi = LA.inverse(Fx, M)
    out = []
    for row in Mi:
        r = []
        for num, den in row:
            if P.degree(den) != 0:
                raise ArithmeticError("transform is not unimodular")
            r.append(P.scale(K, K.inv(den[0]), num))
        out.append(r)
    return out


def _rebase(o, basis, a):
    """Order with basis ``basis`` (rows in o's coordinates)."""
    K, n = o.K, o.n
    Tinv = _poly_matrix_inverse(K, basis)

    def coords(u):
        out = [()] * n
        for c, row in zip(u, Tinv):
            if c:
                for k in range(n):
                    if row[k]:
                        out[k] = P.add(K, out[k], P.mul(K, c, row[k]))
        return out

    table = [[coords(o.mul(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    # compose with the transform of o
    T = []
    for row in basis:
        t = [()] * n
        for c, orow in zip(row, o.transform):
            if c:
                for k in range(n):
                    if orow[k]:
                        t[k] = P.add(K, t[k], P.mul(K, c, orow[k]))
        T.append(t)
    return FunctionFieldOrder(K, n, table, o.genus, list(a), T, o.curve)


def table_degree_violations(o):
    """Entries with ``deg mu_{i,j}^k > a_i + a_j - a_k`` (should be empty when reduced)."""
    bad = []
    for i in range(o.n):
        for j in range(o.n):
            for k, c in enumerate(o.table[i][j]):
                if c and P.degree(c) > o.a[i] + o.a[j] - o.a[k]:
                    bad.append((i, j, k))
    return bad


def change_basis(o, rows):
    """Order over the basis given by unimodular ``rows`` (in o's coordinates);
    pole orders are recomputed."""
    new = _rebase(o, [list(r) for r in rows], [0] * o.n)
    new.a = None
    return new
