"""Truncated unramified p-adic rings ``Z_{p^s} / p^m``.

Elements are tuples of ``s`` integers in ``[0, p^m)``: coordinates on the
basis ``1, z, ..., z^{s-1}`` where ``z`` is a root of the residue modulus,
the deterministic ``F_p`` modulus of degree ``s`` with its coefficients
read as integers in ``[0, p)``.
"""

from .fields import make_extension, modulus_of, PrimeField
from .series import PrecisionError


class TruncLocalRing:
    def __init__(self, p, s, m):
        if m < 1:
            raise PrecisionError("precision must be >= 1")
        self.p = p
        self.s = s
        self.m = m
        self.N = p ** m
        self.residue_field = make_extension(p, s)
        self.modulus = tuple(int(c) for c in modulus_of(self.residue_field)) if s > 1 else (0, 1)
        self._tail = [-c for c in self.modulus[:-1]]
        self.zero = (0,) * s
        self.one = (1,) + (0,) * (s - 1)

    def __repr__(self):
        return f"TruncLocalRing(p={self.p}, s={self.s}, m={self.m})"

    def __eq__(self, other):
        return (isinstance(other, TruncLocalRing) and other.p == self.p
                and other.s == self.s and other.m == self.m)

    def __hash__(self):
        return hash(("Zq", self.p, self.s, self.m))

    @property
    def precision(self):
        return self.m

    def with_precision(self, m):
        return TruncLocalRing(self.p, self.s, m)

    def coerce(self, a):
        N = self.N
        return tuple(int(x) % N for x in a)

    def scalar(self, c):
        return (int(c) % self.N,) + (0,) * (self.s - 1)

    from_int = scalar

    def add(self, a, b):
        N = self.N
        return tuple((x + y) % N for x, y in zip(a, b))

    def sub(self, a, b):
        N = self.N
        return tuple((x - y) % N for x, y in zip(a, b))

    def neg(self, a):
        N = self.N
        return tuple(-x % N for x in a)

    def scale(self, c, a):
        N = self.N
        return tuple(c * x % N for x in a)

    def mul(self, a, b):
        s = self.s
        N = self.N
        if s == 1:
            return (a[0] * b[0] % N,)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        tail = self._tail
        for d in range(2 * s - 2, s - 1, -1):
            c = prod[d] % N
            if c:
                off = d - s
                for i in range(s):
                    prod[off + i] += c * tail[i]
        return tuple(c % N for c in prod[:s])

    def is_zero(self, a):
        return not any(a)

    def is_one(self, a):
        return a == self.one

    def residue(self, a):
        """Image in ``F_{p^s}`` (an element of the deterministic residue field)."""
        F = self.residue_field
        if isinstance(F, PrimeField):
            return a[0] % self.p
        return tuple(x % self.p for x in a)

    def from_residue(self, c):
        F = self.residue_field
        if isinstance(F, PrimeField):
            return self.scalar(c)
        return self.coerce(c)

    def is_unit(self, a):
        return not self.residue_field.is_zero(self.residue(a))

    def valuation(self, a):
        v = self.m
        for x in a:
            if x:
                k = 0
                while x % self.p == 0:
                    x //= self.p
                    k += 1
                v = min(v, k)
        return v

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("non-unit in the local ring")
        F = self.residue_field
        b = self.from_residue(F.inv(self.residue(a)))
        prec = 1
        while prec < self.m:
            prec = min(2 * prec, self.m)
            R = TruncLocalRing(self.p, self.s, prec)
            bb = R.coerce(b)
            ab = R.mul(R.coerce(a), bb)
            b = R.mul(bb, R.sub(R.from_int(2), ab))
        return self.coerce(b)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return out

    # digits ----------------------------------------------------------------
    def digits(self, a):
        """Little-endian base-p digits: ``out[k][i]`` is digit k of coordinate i."""
        p = self.p
        out = []
        coords = list(a)
        for _ in range(self.m):
            out.append([c % p for c in coords])
            coords = [c // p for c in coords]
        return out

    def from_digits(self, digs):
        s = self.s
        coords = [0] * s
        pk = 1
        for row in digs:
            for i in range(s):
                coords[i] += int(row[i]) * pk
            pk *= self.p
        return self.coerce(coords)
