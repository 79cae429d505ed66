"""Splitting a finite étale algebra over a finite field into residue fields.

An algebra ``A`` of dimension ``N`` over ``L`` is given by structure
constants ``table[i][j]`` (coordinates of ``e_i e_j``) and the coordinates of
its unit.  The splitting uses the Frobenius-fixed subalgebra (whose
dimension counts the factors) and idempotents extracted from it.
"""

from dataclasses import dataclass

from ..linalg import matrix as LA
from ..rng import SeedStream
from . import poly as P
from .fields import make_relative_extension


class NotEtaleError(ArithmeticError):
    pass


class Algebra:
    def __init__(self, L, table, one):
        self.L = L
        self.table = table
        self.N = len(table)
        self.one = list(one)
        self.zero = [L.zero] * self.N

    def add(self, a, b):
        return [self.L.add(x, y) for x, y in zip(a, b)]

    def sub(self, a, b):
        return [self.L.sub(x, y) for x, y in zip(a, b)]

    def scale(self, c, a):
        return [self.L.mul(c, x) for x in a]

    def mul(self, a, b):
        L = self.L
        out = [L.zero] * self.N
        for i, x in enumerate(a):
            if L.is_zero(x):
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if L.is_zero(y):
                    continue
                xy = L.mul(x, y)
                for k, c in enumerate(row[j]):
                    if not L.is_zero(c):
                        out[k] = L.add(out[k], L.mul(xy, c))
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
        return all(self.L.is_zero(x) for x in a)

    def mult_matrix(self, a):
        """Matrix (rows = images of basis vectors) of multiplication by ``a``."""
        return [self.mul(a, e) for e in self.basis()]

    def basis(self):
        L = self.L
        return [[L.one if i == j else L.zero for j in range(self.N)] for i in range(self.N)]

    def trace(self, a):
        M = self.mult_matrix(a)
        acc = self.L.zero
        for i in range(self.N):
            acc = self.L.add(acc, M[i][i])
        return acc

    def trace_form_det(self):
        B = self.basis()
        G = [[self.trace(self.mul(B[i], B[j])) for j in range(self.N)] for i in range(self.N)]
        return LA.det(self.L, G)


@dataclass
class FiberFactor:
    field: object            # S, an extension of L of degree ``degree``
    degree: int
    idempotent: list         # coordinates in A
    proj: list               # N x degree matrix over L: coords(a) -> S-coords
    generator_root: object   # image of the chosen generator of the component

    def project(self, coords):
        L = self.field.base if self.degree > 1 else self.field
        out = []
        for j in range(self.degree):
            acc = L.zero
            for i, c in enumerate(coords):
                v = self.proj[i][j]
                if not L.is_zero(c) and not L.is_zero(v):
                    acc = L.add(acc, L.mul(c, v))
            out.append(acc)
        return tuple(out) if self.degree > 1 else out[0]


def _span_subalgebra(A, elems):
    rows, _ = LA.rref(A.L, elems, A.N)
    return rows


def _fixed_subalgebra(A):
    """Basis of {a : a^q = a}, q = |L|."""
    L = A.L
    q = L.order
    B = A.basis()
    frob = [A.sub(A.pow(e, q), e) for e in B]
    # a = sum c_i e_i fixed iff sum c_i (e_i^q - e_i) = 0 (Frobenius is L-linear)
    return LA.left_kernel(L, frob, A.N)


def _split_idempotent(A, e, sub, rng):
    """Try to split an idempotent ``e`` using an element of the subalgebra ``sub``."""
    L = A.L
    q = L.order
    coeffs = [L.from_code(rng.randbelow(q)) for _ in sub]
    b = list(A.zero)
    for c, v in zip(coeffs, sub):
        b = A.add(b, A.scale(c, v))
    b = A.mul(b, e)
    if L.char == 2:
        # absolute trace to F_2 of each component value: an idempotent
        t = b
        acc = b
        for _ in range(L.absolute_degree - 1):
            t = A.mul(t, t)
            acc = A.add(acc, t)
        c = acc
    else:
        h = A.pow(b, (q - 1) // 2)
        # components: 0, 1 or -1; (h^2 + h)/2 is the idempotent of the +1 part
        c = A.scale(L.inv(L.from_int(2)), A.add(A.mul(h, h), h))
    e1 = A.mul(e, c)
    e2 = A.sub(e, e1)
    if A.is_zero(e1) or A.is_zero(e2):
        return None
    return e1, e2


def _component_dim(A, e):
    return LA.rank(A.L, [A.mul(e, v) for v in A.basis()], A.N)


def factor_fiber_algebra(L, table, one, seed=0):
    """Factor an étale ``L``-algebra into fields.

    Returns a list of :class:`FiberFactor`, ordered by degree and then by the
    codes of the idempotent coordinates.
    """
    A = Algebra(L, table, one)
    if L.is_zero(A.trace_form_det()):
        raise NotEtaleError("algebra is not étale (degenerate trace form)")
    fixed = _fixed_subalgebra(A)
    count = len(fixed)
    rng = SeedStream(seed, ("fiber-split",))
    idems = [list(A.one)]
    attempts = 0
    while len(idems) < count:
        attempts += 1
        if attempts > 200 * count + 200:
            raise ArithmeticError("idempotent splitting did not converge")  # pragma: no cover
        new = []
        for e in idems:
            sub = [A.mul(e, v) for v in fixed]
            sub = _span_subalgebra(A, sub)
            if len(sub) <= 1:
                new.append(e)
                continue
            parts = _split_idempotent(A, e, sub, rng.child(attempts, len(new)))
            if parts is None:
                new.append(e)
            else:
                new.extend(parts)
        idems = new
    factors = [_make_factor(A, e, rng.child("gen", idx)) for idx, e in enumerate(idems)]
    factors.sort(key=lambda f: (f.degree, [L.code(c) for c in f.idempotent]))
    return factors


def _component_basis(A, e):
    rows, _ = LA.rref(A.L, [A.mul(e, v) for v in A.basis()], A.N)
    return rows


def _minpoly_in(A, e, alpha, k):
    """Minimal polynomial over L of ``alpha`` in the component ``eA`` (degree <= k)."""
    L = A.L
    powers = [list(e)]
    for _ in range(k):
        powers.append(A.mul(powers[-1], alpha))
    for d in range(1, k + 1):
        # find c with alpha^d = sum_{i<d} c_i alpha^i
        M = [powers[i] for i in range(d)]
        sol = LA.solve_left(L, M, powers[d])
        if sol is not None:
            return tuple(L.neg(c) for c in sol) + (L.one,), powers
    raise ArithmeticError("minimal polynomial not found")  # pragma: no cover


def _make_factor(A, e, rng):
    L = A.L
    k = _component_dim(A, e)
    S = make_relative_extension(L, k)
    comp = _component_basis(A, e)
    q = L.order
    while True:
        coeffs = [L.from_code(rng.randbelow(q)) for _ in comp]
        alpha = list(A.zero)
        for c, v in zip(coeffs, comp):
            alpha = A.add(alpha, A.scale(c, v))
        mu, powers = _minpoly_in(A, e, alpha, k)
        if P.degree(mu) == k:
            break
    # canonical generator: smallest-code root of mu in S
    if k == 1:
        root = L.neg(mu[0])
        roots_S = [root]
    else:
        mu_S = tuple(S.embed(c) for c in mu)
        roots_S = P.roots(S, mu_S)
    beta = roots_S[0]
    # projection: e*a = sum c_i alpha^i  ->  sum c_i beta^i
    beta_pows = [S.one]
    for _ in range(k - 1):
        beta_pows.append(S.mul(beta_pows[-1], beta))
    basis_pows = powers[:k]
    proj = []
    for v in A.basis():
        ev = A.mul(e, v)
        c = LA.solve_left(L, basis_pows, ev)
        if k == 1:
            proj.append([c[0]])
        else:
            img = S.zero
            for ci, bp in zip(c, beta_pows):
                img = S.add(img, S.scale(ci, bp))
            proj.append(list(img))
    return FiberFactor(field=S, degree=k, idempotent=e, proj=proj,
                       generator_root=beta)
