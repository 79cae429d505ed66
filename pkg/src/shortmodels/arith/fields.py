"""Scalar fields: prime fields, extension towers, Q, K(x) and number fields.

Every field object exposes the same small protocol (``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``div``, ``is_zero``,
``from_int``) so that the polynomial and linear-algebra code can stay
generic.  Elements are plain immutable Python values: ints for prime fields,
tuples of base-field elements for extensions, ``Fraction`` for Q.

Finite fields additionally provide ``order``, ``char``, ``code``/``from_code``
(a bijection with ``range(order)``) and ``elements()``.
"""

from fractions import Fraction
from functools import lru_cache

from sympy import isprime


class FieldError(ArithmeticError):
    pass


class PrimeField:
    """F_p with elements the ints ``0 .. p-1``."""

    degree = 1
    finite = True

    def __init__(self, p):
        p = int(p)
        if p < 2 or not isprime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1
        self.base = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def prime_field(self):
        return self

    @property
    def absolute_degree(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, k):
        return int(k) % self.p

    def embed(self, a):
        return a

    def lift_from(self, sub, a):
        if sub != self:
            raise FieldError(f"{sub!r} is not below {self!r}")
        return a

    def code(self, a):
        return a

    def from_code(self, c):
        return c

    def elements(self):
        return range(self.p)

    def coords(self, a):
        """Coordinates over the prime field."""
        return [a]

    def from_coords(self, cs):
        return cs[0] % self.p

    def frobenius(self, a):
        return a


class ExtField:
    """``base[X]/(modulus)`` for a monic irreducible ``modulus``.

    ``modulus`` is a tuple of base elements, lowest degree first, with a
    final 1.  Elements are tuples of length ``degree``.
    """

    finite = True

    def __init__(self, base, modulus):
        modulus = tuple(modulus)
        if len(modulus) < 2 or not base.is_one(modulus[-1]):
            raise FieldError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = k = len(modulus) - 1
        self.char = base.char
        self.order = base.order ** k
        self.zero = (base.zero,) * k
        self.one = (base.one,) + (base.zero,) * (k - 1)
        self.gen = (base.zero, base.one) + (base.zero,) * (k - 2) if k > 1 else (
            base.neg(modulus[0]),)
        self._prime = isinstance(base, PrimeField)
        # X^(k+i) as a combination of 1..X^(k-1), for i < k - 1
        self._tail = [base.neg(c) for c in modulus[:-1]]

    def __repr__(self):
        return f"Ext({self.base!r}, deg {self.degree})"

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))

    @property
    def prime_field(self):
        return self.base.prime_field

    @property
    def absolute_degree(self):
        return self.degree * self.base.absolute_degree

    def add(self, a, b):
        if self._prime:
            p = self.char
            return tuple((x + y) % p for x, y in zip(a, b))
        ad = self.base.add
        return tuple(ad(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._prime:
            p = self.char
            return tuple((x - y) % p for x, y in zip(a, b))
        sb = self.base.sub
        return tuple(sb(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self._prime:
            p = self.char
            return tuple(-x % p for x in a)
        ng = self.base.neg
        return tuple(ng(x) for x in a)

    def scale(self, c, a):
        """Multiply by a base-field scalar."""
        mb = self.base.mul
        return tuple(mb(c, x) for x in a)

    def mul(self, a, b):
        k = self.degree
        if self._prime:
            p = self.char
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            tail = self._tail
            for d in range(2 * k - 2, k - 1, -1):
                c = prod[d] % p
                if c:
                    off = d - k
                    for i in range(k):
                        prod[off + i] += c * tail[i]
            return tuple(c % p for c in prod[:k])
        B = self.base
        prod = [B.zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        tail = self._tail
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if not B.is_zero(c):
                off = d - k
                for i in range(k):
                    prod[off + i] = B.add(prod[off + i], B.mul(c, tail[i]))
        return tuple(prod[:k])

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in %r" % self)
        from . import poly as P
        B = self.base
        g, s, _ = P.xgcd(B, P.normalize(B, a), self.modulus)
        if P.degree(g) != 0:
            raise FieldError("modulus is not irreducible")
        ginv = B.inv(g[0])
        s = P.scale(B, ginv, s)
        return self._pad(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def _pad(self, coeffs):
        coeffs = tuple(coeffs)
        return coeffs + (self.base.zero,) * (self.degree - len(coeffs))

    def is_zero(self, a):
        bz = self.base.is_zero
        return all(bz(x) for x in a)

    def is_one(self, a):
        return a == self.one

    def from_int(self, k):
        return (self.base.from_int(k),) + (self.base.zero,) * (self.degree - 1)

    def embed(self, a):
        """Image of an element of the immediate base field."""
        return (a,) + (self.base.zero,) * (self.degree - 1)

    def lift_from(self, sub, a):
        """Image of an element of ``sub``, a field somewhere below in the tower."""
        if sub == self:
            return a
        return self.embed(self.base.lift_from(sub, a))

    def from_poly(self, coeffs):
        """Reduce a base-field polynomial (low degree first) mod the modulus."""
        from . import poly as P
        r = P.mod(self.base, P.normalize(self.base, coeffs), self.modulus)
        return self._pad(r)

    def code(self, a):
        bq = self.base.order
        c = 0
        for x in reversed(a):
            c = c * bq + self.base.code(x)
        return c

    def from_code(self, c):
        bq = self.base.order
        out = []
        for _ in range(self.degree):
            c, d = divmod(c, bq)
            out.append(self.base.from_code(d))
        return tuple(out)

    def elements(self):
        return (self.from_code(c) for c in range(self.order))

    def coords(self, a):
        out = []
        for x in a:
            out.extend(self.base.coords(x))
        return out

    def from_coords(self, cs):
        w = self.base.absolute_degree
        return tuple(self.base.from_coords(cs[i * w:(i + 1) * w])
                     for i in range(self.degree))

    def frobenius(self, a):
        return self.pow(a, self.char)


def lexicographic_irreducible(F, k):
    """Smallest monic irreducible of degree ``k`` over ``F``.

    Monic polynomials ``X^k + c_{k-1} X^{k-1} + ... + c_0`` are enumerated by
    the integer ``sum code(c_i) * q^i``, i.e. comparing the coefficient of
    ``X^{k-1}`` first.
    """
    from . import poly as P
    if k == 1:
        return (F.zero, F.one)
    q = F.order
    for c in range(q ** k):
        coeffs = []
        v = c
        for _ in range(k):
            v, d = divmod(v, q)
            coeffs.append(F.from_code(d))
        f = tuple(coeffs) + (F.one,)
        if F.is_zero(f[0]):
            continue
        if P.is_irreducible(F, f):
            return f
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def make_extension(p, e=1):
    """The deterministic F_{p^e}: prime field, or quotient by the smallest
    monic irreducible of degree ``e``."""
    base = PrimeField(p)
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if e == 1:
        return base
    return ExtField(base, lexicographic_irreducible(base, e))


@lru_cache(maxsize=None)
def make_relative_extension(base, k):
    """Deterministic degree-``k`` extension of a finite field ``base``."""
    if k == 1:
        return base
    return ExtField(base, lexicographic_irreducible(base, k))


def modulus_of(F):
    """Dense coefficient list of the defining modulus (``[0, 1]`` for F_p)."""
    if isinstance(F, PrimeField):
        return (0, 1)
    return F.modulus


def element_degree(F, a, over=None):
    """Degree over ``over`` (default: prime field) of the subfield generated by ``a``."""
    qb = (over.order if over is not None else F.char)
    k = 1
    b = _qpow(F, a, qb)
    while b != a:
        b = _qpow(F, b, qb)
        k += 1
    return k


def _qpow(F, a, e):
    if isinstance(F, PrimeField):
        return a
    return F.pow(a, e)


class RationalField:
    """Q with ``fractions.Fraction`` elements."""

    finite = False
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, k):
        return Fraction(k)

    def embed(self, a):
        return Fraction(a)


QQ = RationalField()


class RationalFunctionField:
    """K(x) for a field K; elements are ``(num, den)`` with ``den`` monic and
    ``gcd(num, den) = 1``, both dense polynomials over K."""

    finite = False

    def __init__(self, K):
        self.K = K
        self.char = K.char
        self.zero = ((), (K.one,))
        self.one = ((K.one,), (K.one,))
        self.x = ((K.zero, K.one), (K.one,))

    def __repr__(self):
        return f"{self.K!r}(x)"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.K == self.K

    def __hash__(self):
        return hash(("Frac", self.K))

    def make(self, num, den=None):
        from . import poly as P
        K = self.K
        num = P.normalize(K, num)
        if den is None:
            return (num, (K.one,))
        den = P.normalize(K, den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = P.gcd(K, num, den)
        if P.degree(g) > 0:
            num = P.div_exact(K, num, g)
            den = P.div_exact(K, den, g)
        lc = den[-1]
        if not K.is_one(lc):
            il = K.inv(lc)
            num = P.scale(K, il, num)
            den = P.scale(K, il, den)
        return (num, den)

    def add(self, a, b):
        from . import poly as P
        K = self.K
        if a[1] == b[1]:
            return self.make(P.add(K, a[0], b[0]), a[1])
        return self.make(P.add(K, P.mul(K, a[0], b[1]), P.mul(K, b[0], a[1])),
                         P.mul(K, a[1], b[1]))

    def neg(self, a):
        from . import poly as P
        return (P.neg(self.K, a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        from . import poly as P
        K = self.K
        if not a[0] or not b[0]:
            return self.zero
        return self.make(P.mul(K, a[0], b[0]), P.mul(K, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of 0 in K(x)")
        return self.make(a[1], a[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not a[0]

    def is_one(self, a):
        return a == self.one

    def from_int(self, k):
        return self.make((self.K.from_int(k),))

    def embed(self, c):
        return self.make((c,))

    def from_poly(self, f):
        return self.make(f)

    def degree(self, a):
        """deg num - deg den (valuation at infinity, negated); None for 0."""
        if not a[0]:
            return None
        return len(a[0]) - len(a[1])

    def leading(self, a):
        """Coefficient of x^degree in the expansion at infinity."""
        return self.K.div(a[0][-1], a[1][-1])


class NumberField:
    """Q[X]/(f) for a monic irreducible ``f`` with integer coefficients.

    Elements are tuples of ``Fraction`` of length ``deg f`` on the power basis.
    """

    finite = False
    char = 0

    def __init__(self, f):
        f = tuple(Fraction(c) for c in f)
        if f[-1] != 1:
            raise FieldError("defining polynomial must be monic")
        self.f = f
        self.n = len(f) - 1
        self.zero = (Fraction(0),) * self.n
        self.one = (Fraction(1),) + (Fraction(0),) * (self.n - 1)

    def __repr__(self):
        return f"NumberField(deg {self.n})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.f == self.f

    def __hash__(self):
        return hash(("NF", self.f))

    def _pad(self, c):
        c = tuple(c)
        return c + (Fraction(0),) * (self.n - len(c))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        from . import poly as P
        return self._pad(P.mod(QQ, P.mul(QQ, P.normalize(QQ, a), P.normalize(QQ, b)), self.f))

    def inv(self, a):
        from . import poly as P
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in number field")
        g, s, _ = P.xgcd(QQ, P.normalize(QQ, a), self.f)
        if P.degree(g) != 0:
            raise FieldError("defining polynomial is reducible")
        return self._pad(P.scale(QQ, 1 / g[0], s))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def is_one(self, a):
        return a == self.one

    def from_int(self, k):
        return (Fraction(k),) + (Fraction(0),) * (self.n - 1)

    def embed(self, c):
        return (Fraction(c),) + (Fraction(0),) * (self.n - 1)

    def from_poly(self, coeffs):
        from . import poly as P
        return self._pad(P.mod(QQ, P.normalize(QQ, [Fraction(c) for c in coeffs]), self.f))


class IntegerRing:
    """Z with Python ints (a ring, not a field: ``inv`` only for units)."""

    finite = False
    char = 0
    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in ZZ")

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, k):
        return int(k)

    def embed(self, a):
        return int(a)


ZZ = IntegerRing()
