"""Truncated power series ``S[[t]]/t^m`` over a finite field ``S``.

:class:`SeriesRing` works on raw tuples of length ``m`` (fast path used by
the pipelines); :class:`TruncSeries` is a small value wrapper with operator
overloading and :func:`series_arith` is the checked entry point.
"""

from .. import kernels
from .fields import ExtField, PrimeField


class PrecisionError(ValueError):
    pass


class SeriesRing:
    def __init__(self, S, m):
        if m < 1:
            raise PrecisionError("precision must be >= 1")
        self.S = S
        self.m = m
        self.zero = (S.zero,) * m
        self.one = (S.one,) + (S.zero,) * (m - 1)
        self.t = ((S.zero, S.one) + (S.zero,) * (m - 2))[:m] if m > 1 else (S.zero,)
        self._mode = ("prime" if isinstance(S, PrimeField)
                      else "ext" if isinstance(S, ExtField) and isinstance(S.base, PrimeField)
                      else "generic")

    def __repr__(self):
        return f"SeriesRing({self.S!r}, t^{self.m})"

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and other.S == self.S and other.m == self.m

    def __hash__(self):
        return hash(("Series", self.S, self.m))

    @property
    def precision(self):
        return self.m

    def with_precision(self, m):
        return SeriesRing(self.S, m)

    def coerce(self, a):
        """Pad or truncate a coefficient sequence to this precision."""
        a = tuple(a)[:self.m]
        return a + (self.S.zero,) * (self.m - len(a))

    def scalar(self, c):
        return (c,) + (self.S.zero,) * (self.m - 1)

    def from_int(self, k):
        return self.scalar(self.S.from_int(k))

    def add(self, a, b):
        S = self.S
        return tuple(S.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        S = self.S
        return tuple(S.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.S.neg(x) for x in a)

    def scale(self, c, a):
        S = self.S
        return tuple(S.mul(c, x) for x in a)

    def is_zero(self, a):
        return all(self.S.is_zero(x) for x in a)

    def is_one(self, a):
        return a == self.one

    def is_unit(self, a):
        return not self.S.is_zero(a[0])

    def residue(self, a):
        return a[0]

    def valuation(self, a):
        for i, x in enumerate(a):
            if not self.S.is_zero(x):
                return i
        return self.m

    def mul(self, a, b):
        m = self.m
        S = self.S
        if self._mode == "prime":
            return tuple(kernels.series_mul_mod_p(a, b, m, S.p))
        if self._mode == "ext":
            return self._mul_kronecker(a, b)
        out = [S.zero] * m
        for i, x in enumerate(a):
            if S.is_zero(x):
                continue
            for j in range(m - i):
                y = b[j]
                if not S.is_zero(y):
                    out[i + j] = S.add(out[i + j], S.mul(x, y))
        return tuple(out)

    def _mul_kronecker(self, a, b):
        # pack each series into one F_p polynomial with stride 2k-1, multiply,
        # then reduce every coefficient block modulo the defining polynomial
        S = self.S
        k = S.degree
        p = S.char
        stride = 2 * k - 1
        m = self.m
        A = [0] * (m * stride)
        B = [0] * (m * stride)
        for i in range(m):
            A[i * stride:i * stride + k] = a[i]
            B[i * stride:i * stride + k] = b[i]
        prod = kernels.polmul_mod_p(A, B, p)
        out = []
        tail = S._tail
        for i in range(m):
            block = list(prod[i * stride:(i + 1) * stride])
            block += [0] * (stride - len(block))
            for d in range(stride - 1, k - 1, -1):
                c = block[d] % p
                if c:
                    off = d - k
                    for j in range(k):
                        block[off + j] += c * tail[j]
            out.append(tuple(c % p for c in block[:k]))
        return tuple(out)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("series with non-unit constant term")
        S = self.S
        # Newton iteration b <- b (2 - a b), doubling the precision
        b = (S.inv(a[0]),)
        prec = 1
        while prec < self.m:
            prec = min(2 * prec, self.m)
            R = SeriesRing(S, prec)
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

    def compose_poly(self, coeffs, a, lift=None):
        """Evaluate a polynomial (coefficients lifted by ``lift``) at ``a``."""
        lift = lift or self.scalar
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), lift(c))
        return acc


class TruncSeries:
    """An element of ``S[[t]]/t^m``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, S, coeffs, m=None):
        coeffs = tuple(coeffs)
        ring = S if isinstance(S, SeriesRing) else SeriesRing(S, m if m is not None else len(coeffs))
        if len(coeffs) > ring.m:
            raise PrecisionError("more coefficients than the precision")
        self.ring = ring
        self.coeffs = ring.coerce(coeffs)

    @property
    def precision(self):
        return self.ring.m

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r} mod t^{self.ring.m})"

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def _check(self, other):
        if self.ring.S != other.ring.S:
            raise ValueError("series over different coefficient fields")
        if self.ring.m != other.ring.m:
            raise PrecisionError("precision mismatch")

    def __add__(self, other):
        return series_arith(self, other, "add")

    def __sub__(self, other):
        self._check(other)
        return TruncSeries(self.ring, self.ring.sub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        return series_arith(self, other, "mul")

    def inverse(self):
        return series_arith(self, None, "invert")


def series_arith(a, b, op):
    """``add``/``mul`` of two series of equal precision, or ``invert`` of ``a``."""
    R = a.ring
    if op == "invert":
        return TruncSeries(R, R.inv(a.coeffs))
    a._check(b)
    if op == "add":
        return TruncSeries(R, R.add(a.coeffs, b.coeffs))
    if op == "mul":
        return TruncSeries(R, R.mul(a.coeffs, b.coeffs))
    raise ValueError(f"unknown series operation {op!r}")
