"""Dense univariate polynomials over a field object.

A polynomial is a tuple of field elements, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Every function takes the
coefficient field as its first argument.
"""

from sympy import factorint

from .. import kernels
from ..rng import SeedStream
from .fields import PrimeField


def _is_pf(F):
    return isinstance(F, PrimeField)


def normalize(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def degree(a):
    return len(a) - 1


def const(F, c):
    return () if F.is_zero(c) else (c,)


def x_power(F, k):
    return (F.zero,) * k + (F.one,)


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if _is_pf(F):
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
    else:
        out = [F.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
    return normalize(F, out)


def neg(F, a):
    return tuple(F.neg(x) for x in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if F.is_zero(c):
        return ()
    return normalize(F, [F.mul(c, x) for x in a])


def shift(F, a, k):
    """Multiply by x^k."""
    if not a:
        return ()
    return (F.zero,) * k + tuple(a)


def mul(F, a, b):
    if not a or not b:
        return ()
    if _is_pf(F):
        return tuple(kernels.polmul_mod_p(a, b, F.p))
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return normalize(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), tuple(a)
    db = len(b) - 1
    inv_lc = F.inv(b[-1])
    r = list(a)
    q = [F.zero] * (len(a) - db)
    if _is_pf(F):
        p = F.p
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv_lc % p
            if c:
                q[i - db] = c
                off = i - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return normalize(F, q), normalize(F, r[:db])
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(r[i], inv_lc)
        if not F.is_zero(c):
            q[i - db] = c
            off = i - db
            for j in range(db + 1):
                r[off + j] = F.sub(r[off + j], F.mul(c, b[j]))
    return normalize(F, q), normalize(F, r[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def div_exact(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(F, a):
    if not a:
        return ()
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b):
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g``; ``g`` not normalised."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    return r0, s0, t0


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def evaluate_in(E, a, x, lift=None):
    """Evaluate a polynomial with coefficients in a subfield at ``x`` in ``E``.

    ``lift`` maps a coefficient into ``E`` (default ``E.embed``).
    """
    lift = lift or E.embed
    acc = E.zero
    for c in reversed(a):
        acc = E.add(E.mul(acc, x), lift(c))
    return acc


def derivative(F, a):
    return normalize(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def compose(F, a, b):
    """a(b(x))."""
    acc = ()
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), const(F, c))
    return acc


def powmod(F, a, e, m):
    result = (F.one,)
    a = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, a), m)
        e >>= 1
        if e:
            a = mod(F, mul(F, a, a), m)
    return mod(F, result, m)


def from_roots(F, roots):
    out = (F.one,)
    for r in roots:
        out = mul(F, out, (F.neg(r), F.one))
    return out


def resultant(F, a, b):
    """Resultant over a field via the Euclidean remainder sequence."""
    if not a or not b:
        return F.zero
    res = F.one
    while True:
        da, db = degree(a), degree(b)
        if db == 0:
            return F.mul(res, _fpow(F, b[0], da))
        r = mod(F, a, b)
        if not r:
            return F.zero
        dr = degree(r)
        if (da * db) % 2:
            res = F.neg(res)
        res = F.mul(res, _fpow(F, b[-1], da - dr))
        a, b = b, r


def _fpow(F, a, e):
    out = F.one
    while e:
        if e & 1:
            out = F.mul(out, a)
        e >>= 1
        if e:
            a = F.mul(a, a)
    return out


def code(F, a):
    """Integer code of a polynomial: coefficient codes in base q, constant term least significant."""
    c = 0
    for x in reversed(a):
        c = c * F.order + F.code(x)
    return c


def sort_key(F, a):
    return (degree(a), code(F, a))


# --- finite fields -----------------------------------------------------------

def frobenius_x(F, m):
    """x^q mod m."""
    return powmod(F, (F.zero, F.one), F.order, m)


def is_irreducible(F, f):
    """Rabin's test over a finite field."""
    f = normalize(F, f)
    k = degree(f)
    if k < 1:
        return False
    if k == 1:
        return True
    f = monic(F, f)
    x = (F.zero, F.one)
    q = F.order
    powers = {}
    cur = x
    for i in range(1, k + 1):
        cur = powmod(F, cur, q, f)
        powers[i] = cur
    if powers[k] != mod(F, x, f):
        return False
    for r in factorint(k):
        h = sub(F, powers[k // r], x)
        if degree(gcd(F, f, h)) > 0:
            return False
    return True


def _pth_root(F, c):
    # c^(1/p) = c^(p^(absdeg - 1)) in a finite field of characteristic p
    if _is_pf(F):
        return c
    return F.pow(c, F.char ** (F.absolute_degree - 1))


def squarefree_decomposition(F, f):
    """List of ``(g, e)`` with ``f = lc * prod g^e``, g squarefree and coprime."""
    f = monic(F, f)
    out = []
    p = F.char

    def rec(f, mult):
        if degree(f) < 1:
            return
        df = derivative(F, f)
        if not df:
            # f is a polynomial in x^p
            g = tuple(_pth_root(F, f[i]) for i in range(0, len(f), p))
            rec(monic(F, g), mult * p)
            return
        c = gcd(F, f, df)
        w = div_exact(F, f, c)
        i = 1
        while degree(w) > 0:
            y = gcd(F, w, c)
            z = div_exact(F, w, y)
            if degree(z) > 0:
                out.append((z, i * mult))
            i += 1
            w = y
            c = div_exact(F, c, y)
        if degree(c) > 0:
            g = tuple(_pth_root(F, c[i]) for i in range(0, len(c), p))
            rec(monic(F, g), mult * p)

    rec(f, 1)
    return out


def distinct_degree(F, f):
    """Split a squarefree monic ``f`` into products of equal-degree factors."""
    out = []
    x = (F.zero, F.one)
    h = x
    d = 0
    q = F.order
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out.append((g, d))
            f = div_exact(F, f, g)
            h = mod(F, h, f)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def equal_degree(F, f, d, rng=None):
    """Factor a squarefree monic ``f`` whose irreducible factors all have degree ``d``."""
    n = degree(f)
    if n == d:
        return [f]
    rng = rng or SeedStream(0, ("edf", code(F, f)))
    q = F.order
    while True:
        a = normalize(F, [F.from_code(rng.randbelow(q)) for _ in range(n)])
        if degree(a) < 1:
            continue
        if F.char == 2:
            # absolute trace to F_2 of a in F[x]/(f) extended to degree d
            t = a
            acc = a
            for _ in range(F.absolute_degree * d - 1):
                t = mod(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            g = gcd(F, f, acc)
        else:
            e = (q ** d - 1) // 2
            g = gcd(F, f, sub(F, powmod(F, a, e, f), (F.one,)))
        if 0 < degree(g) < n:
            return (equal_degree(F, g, d, rng.child("l"))
                    + equal_degree(F, div_exact(F, f, g), d, rng.child("r")))


def factor(F, f):
    """Monic irreducible factorisation over a finite field.

    Returns ``(lc, [(g, e), ...])`` with factors sorted by degree then code.
    """
    f = normalize(F, f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    facs = []
    for g, e in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d):
                facs.append((irr, e))
    facs.sort(key=lambda t: sort_key(F, t[0]))
    return lc, facs


def roots(F, f):
    """Distinct roots in ``F`` of a nonzero polynomial, sorted by code."""
    f = monic(F, f)
    if degree(f) < 1:
        return []
    g = gcd(F, f, sub(F, frobenius_x(F, f), (F.zero, F.one)))
    if degree(g) < 1:
        return []
    out = [F.neg(h[0]) for h in equal_degree(F, g, 1)]
    return sorted(out, key=F.code)
