"""Sparse multivariate polynomials.

A :class:`MultiPoly` stores a map from exponent tuples to nonzero
coefficients in a ring object (a field from :mod:`fields`, or ``ZZ``).
For polynomials in ``K[x][y_1..y_r]`` the convention is that variable 0 is
``x`` and variables ``1..r`` are the ``y_j``.
"""

from itertools import combinations_with_replacement


class MultiPoly:
    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring, nvars, terms=None):
        self.ring = ring
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length does not match variable count")
                if not ring.is_zero(c):
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, ring, nvars):
        return cls(ring, nvars)

    @classmethod
    def constant(cls, ring, nvars, c):
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, ring, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): ring.one})

    @classmethod
    def monomial(cls, ring, exps, c=None):
        return cls(ring, len(exps), {tuple(exps): ring.one if c is None else c})

    # basic protocol -----------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.ring == other.ring
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"v{i}^{k}" if k > 1 else f"v{i}"
                            for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]!r})" + ("*" + mono if mono else ""))
        return " + ".join(parts)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.ring != other.ring or self.nvars != other.nvars:
            raise ValueError("incompatible polynomials")

    def __add__(self, other):
        self._check(other)
        R = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = R.add(out[e], c) if e in out else c
        return MultiPoly(R, self.nvars, out)

    def __neg__(self):
        R = self.ring
        return MultiPoly(R, self.nvars, {e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        R = self.ring
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = R.mul(c1, c2)
                out[e] = R.add(out[e], v) if e in out else v
        return MultiPoly(R, self.nvars, out)

    def scale(self, c):
        R = self.ring
        return MultiPoly(R, self.nvars, {e: R.mul(c, v) for e, v in self.terms.items()})

    def derivative(self, i):
        R = self.ring
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = R.mul(R.from_int(k), c)
        return MultiPoly(R, self.nvars, out)

    # degrees and sizes --------------------------------------------------
    def total_degree(self, variables=None):
        if not self.terms:
            return -1
        idx = range(self.nvars) if variables is None else variables
        return max(sum(e[i] for i in idx) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def bidegree(self):
        """``(deg_x, total degree in y)`` with variable 0 as ``x``."""
        return self.degree_in(0), self.total_degree(range(1, self.nvars))

    def height(self):
        """Sup-norm of integer coefficients."""
        return max((abs(c) for c in self.terms.values()), default=0)

    def norm2_squared(self):
        return sum(c * c for c in self.terms.values())

    # evaluation ----------------------------------------------------------
    def evaluate(self, point, A, lift):
        """Evaluate at ``point`` (one value per variable) in an algebra ``A``.

        ``A`` provides ``zero``, ``one``, ``add``, ``mul``; ``lift`` maps a
        coefficient into ``A``.
        """
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                if k == 0:
                    cache[key] = A.one
                elif k == 1:
                    cache[key] = point[i]
                else:
                    h = k // 2
                    v = A.mul(power(i, h), power(i, k - h))
                    cache[key] = v
            return cache[key]

        acc = A.zero
        for e, c in self.terms.items():
            term = lift(c)
            for i, k in enumerate(e):
                if k:
                    term = A.mul(term, power(i, k))
            acc = A.add(acc, term)
        return acc


def monomials(nvars, d):
    """Exponent tuples of total degree <= d in ``nvars`` variables.

    Ordered by total degree, then lexicographically descending — a fixed
    canonical order used for coefficient vectors throughout.
    """
    out = []
    for k in range(d + 1):
        block = []
        for combo in combinations_with_replacement(range(nvars), k):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            block.append(tuple(e))
        block.sort(reverse=True)
        out.extend(block)
    return out


def from_vector(ring, nvars, monos, coeffs, prefix=()):
    """Polynomial with ``coeffs[i]`` on ``prefix + monos[i]``."""
    return MultiPoly(ring, nvars, {tuple(prefix) + tuple(m): c
                                   for m, c in zip(monos, coeffs)})
