"""Maximal orders of number fields, certified embeddings and small integers.

A field is given by a monic irreducible ``f`` in ``Z[x]`` (``theta`` a root).
An order is stored by an integral basis over the power basis of ``theta``
(``(den, H)``: basis element ``i`` is ``H[i] / den``) together with its
integer multiplication table.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
import sympy

from ..arith.round2 import AlgebraEngine, IntegerPID, Lattice, LocalPrime
from ..linalg import lll as LLL
from ..linalg import matrix as LA


class NumberFieldInputError(ValueError):
    pass


class _QQ:
    """Minimal rational field for the generic linear algebra (Fractions)."""
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1


QQF = _QQ()


class _ZZ:
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a


ZZR = _ZZ()


# --- polynomial helpers over Z -------------------------------------------------

def _trim(f):
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_disc(f):
    x = sympy.Symbol("x")
    return int(sympy.discriminant(sympy.Poly(list(reversed(f)), x)))


def is_irreducible_Q(f):
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f)), x, domain="ZZ").is_irreducible


def power_structure_constants(f):
    """``theta^i theta^j = sum_k C[i][j][k] theta^k`` for monic ``f``."""
    n = len(f) - 1
    red = [[0] * n for _ in range(2 * n - 1)]
    for k in range(n):
        red[k][k] = 1
    for k in range(n, 2 * n - 1):
        # theta^k = theta * theta^{k-1}
        prev = red[k - 1]
        cur = [0] + prev[:-1]
        top = prev[-1]
        if top:
            cur = [c - top * f[i] for i, c in enumerate(cur)]
        red[k] = cur
    return [[list(red[i + j]) for j in range(n)] for i in range(n)]


# --- the order -----------------------------------------------------------------

@dataclass
class NumberFieldOrder:
    f: list                     # monic defining polynomial, low degree first
    den: int
    H: list                     # n x n integers; basis_i = H[i] / den in the power basis
    table: list                 # table[i][j] = coordinates of b_i b_j on the basis
    one: list                   # coordinates of 1
    disc: int
    _emb: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self):
        return len(self.f) - 1

    # arithmetic on coordinate vectors --------------------------------------
    def zero(self):
        return [0] * self.n

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def sub(self, a, b):
        return [x - y for x, y in zip(a, b)]

    def scale(self, c, a):
        return [c * x for x in a]

    def from_int(self, c):
        return [c * x for x in self.one]

    def mul(self, a, b):
        n = self.n
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n):
                bj = b[j]
                if not bj:
                    continue
                f = ai * bj
                row = self.table[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += f * row[k]
        return out

    def pow(self, a, e):
        out = list(self.one)
        while e:
            if e & 1:
                out = self.mul(out, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return out

    def is_zero(self, a):
        return not any(a)

    def mult_matrix(self, a):
        """Rows: coordinates of ``a * b_i``."""
        n = self.n
        return [self.mul(a, [1 if k == i else 0 for k in range(n)]) for i in range(n)]

    def norm(self, a):
        return int(LA.det(QQF, [[Fraction(x) for x in r] for r in self.mult_matrix(a)]))

    def trace(self, a):
        M = self.mult_matrix(a)
        return sum(M[i][i] for i in range(self.n))

    def charpoly(self, a):
        """Characteristic polynomial of multiplication by ``a`` (low degree first)."""
        M = self.mult_matrix(a)
        return LA.charpoly(ZZR, [list(col) for col in zip(*M)])

    def to_power_basis(self, a):
        """Rational coordinates of ``a`` on ``1, theta, ..., theta^{n-1}``."""
        n = self.n
        out = [Fraction(0)] * n
        for c, h in zip(a, self.H):
            if c:
                for k in range(n):
                    out[k] += Fraction(c * h[k], self.den)
        return out

    def from_power_basis(self, v):
        """Coordinates of a power-basis vector (``None`` if not in the order)."""
        n = self.n
        w = [Fraction(x) * self.den for x in v]
        x = []
        for k in range(n):
            c = w[k] / self.H[k][k]
            if c.denominator != 1:
                return None
            c = int(c)
            x.append(c)
            if c:
                w = [a - c * b for a, b in zip(w, self.H[k])]
        return x if not any(w) else None

    def change_basis(self, U):
        """Order with basis ``b'_i = sum_j U[i][j] b_j`` (``U`` unimodular)."""
        rows = [[sum(U[i][j] * self.H[j][k] for j in range(self.n)) for k in range(self.n)]
                for i in range(self.n)]
        return _order_from_rows(self.f, self.den, rows)

    # embeddings -------------------------------------------------------------
    def roots(self, prec):
        return certified_roots(self.f, prec)

    def embeddings(self, a, prec=128):
        """Complex embeddings ``tau(a)`` (mpmath numbers, in root order)."""
        v = self.to_power_basis(a)
        zs, _ = self.roots(prec)
        with mpmath.workprec(prec):
            return [_horner([mpmath.mpf(c.numerator) / c.denominator for c in v], z) for z in zs]

    def sup_norm_upper(self, a, prec=128):
        """Exact rational upper bound for ``max_tau |tau(a)|`` (interval arithmetic)."""
        v = self.to_power_basis(a)
        _, boxes = self.roots(prec)
        iv = mpmath.iv
        best = Fraction(0)
        with _ivprec(prec):
            coeffs = [iv.mpf(c.numerator) / c.denominator for c in v]
            for Z in boxes:
                val = _horner(coeffs, Z, zero=iv.mpc(0))
                bound = _iv_abs_upper(val)
                best = max(best, bound)
        return best

    def sup_norm_float(self, a, prec=64):
        return max(abs(z) for z in self.embeddings(a, prec))


def _horner(coeffs, z, zero=0):
    acc = zero
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


class _ivprec:
    def __init__(self, prec):
        self.prec = prec

    def __enter__(self):
        self.old = mpmath.iv.prec
        mpmath.iv.prec = self.prec

    def __exit__(self, *exc):
        mpmath.iv.prec = self.old


def _mpf_to_fraction(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man, exp = (-int(man) if sign else int(man)), int(exp)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def _iv_abs_upper(val):
    """Exact rational upper bound of ``|val|`` for an interval complex number."""
    re, im = val.real, val.imag
    a = max(abs(_mpf_to_fraction(re.a)), abs(_mpf_to_fraction(re.b)))
    b = max(abs(_mpf_to_fraction(im.a)), abs(_mpf_to_fraction(im.b)))
    sq = a * a + b * b
    # rational upper bound of sqrt(sq)
    num, den = sq.numerator, sq.denominator
    scale = 1 << 128
    r = _isqrt_ceil(num * scale * scale // den + 1)
    return Fraction(r, scale)


def _isqrt_ceil(x):
    from math import isqrt
    r = isqrt(x)
    return r if r * r == x else r + 1


_ROOT_CACHE = {}


def certified_roots(f, prec):
    """Approximate complex roots of ``f`` and interval boxes each containing one root.

    A disk of radius ``n |f(z)| / |f'(z)|`` around any ``z`` contains a root;
    pairwise disjoint disks around ``n`` approximations therefore isolate all
    roots.  Precision is doubled until the disks separate.
    """
    key = (tuple(f), prec)
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    n = len(f) - 1
    iv = mpmath.iv
    p = prec
    for _ in range(8):
        with mpmath.workprec(p + 32), _ivprec(p + 32):
            res = _isolate(f, n, p)
        if res is not None:
            _ROOT_CACHE[key] = res
            return res
        p *= 2
    raise LLL.PrecisionError("could not isolate the complex roots")


def _isolate(f, n, p):
    iv = mpmath.iv
    zs = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f)], maxsteps=400, extraprec=2 * p)
    zs = sorted(zs, key=lambda z: (float(mpmath.im(z)) > 0, float(mpmath.re(z)),
                                   abs(float(mpmath.im(z)))))
    df = [k * f[k] for k in range(1, n + 1)]
    cz = [(_mpf_to_fraction(mpmath.re(z)), _mpf_to_fraction(mpmath.im(z))) for z in zs]
    radii = []
    for x, y in cz:
        Z = iv.mpc(_frac_iv(x), _frac_iv(y))
        fz = _horner([iv.mpf(c) for c in f], Z, iv.mpc(0))
        dz = _horner([iv.mpf(c) for c in df], Z, iv.mpc(0))
        lo = _iv_abs_lower(dz)
        if lo == 0:
            return None
        radii.append(n * _iv_abs_upper(fz) / lo + Fraction(1, 1 << (p + 16)))
    for i in range(n):
        for j in range(i + 1, n):
            dx = cz[i][0] - cz[j][0]
            dy = cz[i][1] - cz[j][1]
            if dx * dx + dy * dy <= (radii[i] + radii[j]) ** 2:
                return None
    boxes = [iv.mpc(_frac_iv(x - rad, x + rad), _frac_iv(y - rad, y + rad))
             for (x, y), rad in zip(cz, radii)]
    return [mpmath.mpc(z) for z in zs], boxes


def _frac_iv(lo, hi=None):
    """Interval with rational endpoints rounded outward."""
    hi = lo if hi is None else hi
    return mpmath.iv.mpf([_frac_mpf(lo, -1), _frac_mpf(hi, 1)])


def _iv_abs_lower(val):
    re, im = val.real, val.imag

    def lo(iv_):
        a, b = _mpf_to_fraction(iv_.a), _mpf_to_fraction(iv_.b)
        if a <= 0 <= b:
            return Fraction(0)
        return min(abs(a), abs(b))
    sq = lo(re) ** 2 + lo(im) ** 2
    from math import isqrt
    scale = 1 << 128
    r = isqrt(sq.numerator * scale * scale // sq.denominator)
    return Fraction(r, scale)


def _frac_mpf(x, direction):
    """``x`` rounded outward to an mpf (``direction`` -1 floor, +1 ceil)."""
    rnd = "f" if direction < 0 else "c"
    return mpmath.mpf(mpmath.libmp.from_rational(x.numerator, x.denominator,
                                                  mpmath.iv.prec, rnd))


# --- construction --------------------------------------------------------------

def _order_from_rows(f, den, rows):
    n = len(f) - 1
    R = IntegerPID()
    C = power_structure_constants(f)
    eng = AlgebraEngine(R, n, 1, C)
    L = Lattice(R, den, rows)
    table = []
    for i in range(n):
        trow = []
        for j in range(n):
            d2, v = eng.mul((den, rows[i]), (den, rows[j]))
            c = _coords_rows(den, rows, (d2, v))
            if c is None:
                raise NumberFieldInputError("basis is not closed under multiplication")
            trow.append(c)
        table.append(trow)
    one = _coords_rows(den, rows, (1, [1] + [0] * (n - 1)))
    if one is None:
        raise NumberFieldInputError("basis does not contain 1")
    del L
    traces = [sum(table[k][i][i] for i in range(n)) for k in range(n)]
    gram = [[Fraction(sum(table[i][j][k] * traces[k] for k in range(n))) for j in range(n)]
            for i in range(n)]
    disc = int(LA.det(QQF, gram))
    return NumberFieldOrder(list(f), den, [list(r) for r in rows], table, one, disc)


def _coords_rows(den, rows, elem):
    """Integer coordinates of ``elem = (d, v)`` on ``rows / den`` (rows need not be HNF)."""
    d, v = elem
    n = len(rows)
    A = [[Fraction(x, den) for x in r] for r in rows]
    x = LA.solve_left(QQF, A, [Fraction(c, d) for c in v])
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]


def _monicize(f):
    """``g(x) = a^{n-1} f(x / a)`` (monic, same field) for leading coefficient ``a``."""
    a = f[-1]
    n = len(f) - 1
    if a == 1:
        return f
    if a == -1:
        return [-c for c in f]
    return [f[k] * a ** (n - 1 - k) if k < n else 1 for k in range(n + 1)]


def maximal_order(f, basis=None):
    """Ring of integers of ``Q[x]/f``.

    ``basis`` (optional): rational coordinate rows over the power basis of an
    order claimed to be maximal; it is checked to be a ring containing 1 and
    ``p``-maximal at every prime whose square divides ``disc(f)``.
    """
    f = _trim(f)
    if len(f) < 2:
        raise NumberFieldInputError("defining polynomial must have degree >= 1")
    if abs(f[-1]) != 1:
        raise NumberFieldInputError("defining polynomial must be monic")
    f = _monicize(f)
    if not is_irreducible_Q(f):
        raise NumberFieldInputError("defining polynomial is reducible over Q")
    n = len(f) - 1
    if n == 1:
        return _order_from_rows(f, 1, [[1]])
    R = IntegerPID()
    C = power_structure_constants(f)
    eng = AlgebraEngine(R, n, 1, C)
    D = poly_disc(f)
    bad = [p for p, e in sympy.factorint(abs(D)).items() if e >= 2]
    if basis is not None:
        rows = [[Fraction(x) for x in r] for r in basis]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise NumberFieldInputError("explicit basis has the wrong shape")
        den = 1
        for r in rows:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        gens = [(den, [int(x * den) for x in r]) for r in rows]
        try:
            O = Lattice.from_generators(R, n, gens)
        except ArithmeticError as exc:
            raise NumberFieldInputError("explicit basis is not of full rank") from exc
        o = _order_from_rows(f, O.den, O.H)
        for p in bad:
            if eng.maximalize(O, LocalPrime.integer(p)) != O:
                raise NumberFieldInputError(f"explicit basis is not maximal at {p}")
        return o
    O = Lattice(R, 1, [[1 if i == j else 0 for j in range(n)] for i in range(n)])
    for p in sorted(bad):
        O = eng.maximalize(O, LocalPrime.integer(p))
    return _order_from_rows(f, O.den, O.H)


# --- small integers ------------------------------------------------------------

def canonical_gram(o, prec):
    """Gram matrix ``sum_tau Re(tau(b_i) conj(tau(b_j)))`` of the basis."""
    n = o.n
    embs = [o.embeddings([1 if k == i else 0 for k in range(n)], prec) for i in range(n)]
    with mpmath.workprec(prec):
        return [[sum(mpmath.re(x * mpmath.conj(y)) for x, y in zip(embs[i], embs[j]))
                 for j in range(n)] for i in range(n)]


def small_integers(o, prec=None):
    """LLL-reduce the integral basis for the canonical metric.

    Returns the order re-expressed on the reduced basis ``omega``.
    """
    n = o.n
    if n == 1:
        return o
    bits = max(abs(c) for c in o.f).bit_length() + max(
        abs(x) for r in o.H for x in r).bit_length()
    prec = prec or (64 + 4 * bits + 8 * n)
    for _ in range(6):
        try:
            G = canonical_gram(o, prec + 64)
            U = LLL.float_gram_lll(G, prec)
            break
        except LLL.PrecisionError:
            prec *= 2
    else:
        raise LLL.PrecisionError("precision retries exhausted in small_integers")
    # sign normalisation: positive trace, else positive leading power coordinate
    out = []
    for row in U:
        v = [sum(row[j] * o.H[j][k] for j in range(n)) for k in range(n)]
        t = o.trace(row)
        lead = next((x for x in v if x), 0)
        out.append([-x for x in row] if (t < 0 or (t == 0 and lead < 0)) else list(row))
    return o.change_basis(out)


def root_disc_sq_ceil(n, absdisc):
    """``ceil(|d|^{2/n})`` exactly."""
    from sympy import integer_nthroot
    if n == 1:
        return 1
    # smallest D with D^n >= |d|^2
    r, exact = integer_nthroot(absdisc * absdisc, n)
    return int(r) if exact else int(r) + 1


def small_integer_report(o, prec=128):
    """Certified ``max |tau(omega_i)|`` against ``delta^2`` and its LLL relaxation.

    Returns a dict with the exact upper bound ``sup`` (Fraction), and the
    booleans ``within_relaxed`` (``sup <= 2^{(n-1)/2} delta^2``) and
    ``within_delta_sq`` (``sup <= delta^2``), both decided exactly through
    ``sup^{2n}`` against ``2^{n(n-1)} |d|^4`` resp. ``|d|^4``.
    """
    n = o.n
    d = abs(o.disc)
    sups = [o.sup_norm_upper([1 if k == i else 0 for k in range(n)], prec) for i in range(n)]
    sup = max(sups)
    s2n = sup ** (2 * n)
    return {
        "n": n,
        "disc": o.disc,
        "sup": sup,
        "sups": sups,
        "delta_sq": root_disc_sq_ceil(n, d),
        "within_relaxed": s2n <= Fraction(2 ** (n * (n - 1)) * d ** 4),
        "within_delta_sq": s2n <= Fraction(d ** 4),
    }
