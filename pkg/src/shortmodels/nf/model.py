"""Incomplete-intersection models of number fields.

Given the ring of integers on a reduced basis ``omega``, pick
``kappa_j = sum_i u_{i,j} omega_i`` with small seeded integers, compute the
lattice of integer polynomials of total degree ``<= d`` vanishing at
``kappa`` and keep the shortest ``l + 1 - n`` reduced relations together
with a nonvanishing Jacobian minor.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial, prod

from ..arith.fields import ZZ
from ..arith.multipoly import MultiPoly, monomials
from ..linalg import intlattice as IL
from ..linalg import lll as LLL
from ..rng import SeedStream
from .. import kernels
from .order import root_disc_sq_ceil


class IllPoisedError(ArithmeticError):
    pass


class NoMinorError(ArithmeticError):
    pass


class RetryExhaustedError(RuntimeError):
    pass


# --- parameters ----------------------------------------------------------------

def smallest_r(n):
    """Smallest ``r >= 1`` with ``C(2r, r) >= n (r + 1)``."""
    r = 1
    while comb(2 * r, r) < n * (r + 1):
        r += 1
    return r


def _iroot_ceil(x, k):
    """``ceil(x^{1/k})`` for an integer ``x >= 0``."""
    from sympy import integer_nthroot
    y, exact = integer_nthroot(x, k)
    return int(y) if exact else int(y) + 1


def height_bound(n, delta_sq, d, r):
    """``ceil(l^{l/2n} C(d+r,d)^{1/2} (n^2 d (r+1) delta^2)^d)`` computed exactly.

    ``H^{2n} >= l^l C^n X^{2dn}`` is decided in integers.
    """
    C = comb(d + r, d)
    ell = C - n
    X = n * n * d * (r + 1) * delta_sq
    return _iroot_ceil(ell ** ell * C ** n * X ** (2 * d * n), 2 * n)


def coefficient_box(n, delta_sq, d, r):
    """``C(d+r,d) (n^2 d (r+1) delta^2)^{2d}``: bound for the squared covolume factor."""
    return comb(d + r, d) * (n * n * d * (r + 1) * delta_sq) ** (2 * d)


def evaluation_bound(n, delta_sq, d, r):
    """``G = (n^2 d (r+1) delta^2)^d * d * H(d) * C(d+r, d)``.

    Bounds the size of each Jacobian entry of a relation of height ``<= H(d)``
    at a complex embedding; at ``d = r`` it is the bound fixing the precision.
    """
    X = n * n * d * (r + 1) * delta_sq
    return X ** d * d * height_bound(n, delta_sq, d, r) * comb(d + r, d)


@dataclass(frozen=True)
class NFParams:
    n: int
    absdisc: int
    delta_sq: int          # ceil(|d_K|^{2/n})
    r: int
    d: int

    @property
    def N(self):
        return comb(self.d + self.r, self.d)

    @property
    def ell(self):
        return self.N - self.n

    @property
    def kept(self):
        return self.ell + 1 - self.n

    @property
    def H(self):
        return height_bound(self.n, self.delta_sq, self.d, self.r)

    @property
    def frakD(self):
        return coefficient_box(self.n, self.delta_sq, self.d, self.r)

    @property
    def G(self):
        return evaluation_bound(self.n, self.delta_sq, self.d, self.r)

    @property
    def u_max(self):
        return self.d * self.n * (self.r + 1)

    def with_degree(self, d):
        return NFParams(self.n, self.absdisc, self.delta_sq, self.r, d)


def nf_params(n, absdisc, d=None):
    if n < 2:
        raise ValueError("models need n >= 2")
    r = smallest_r(n)
    return NFParams(n, abs(absdisc), root_disc_sq_ceil(n, abs(absdisc)), r,
                    r if d is None else d)


# --- kappa and monomials -------------------------------------------------------

def build_kappas_nf(o, params, seed, attempt=0):
    """``kappa_j = sum_i u_{i,j} omega_i`` with ``u`` in ``[0, d n (r+1)]``.

    Returns ``(kappas, recipe)`` with ``recipe[i][j] = u_{i,j}``.
    """
    rng = SeedStream(seed, ("nf", "kappa", attempt))
    recipe = [[rng.randint(0, params.u_max) for _ in range(params.r)] for _ in range(o.n)]
    return kappas_from_recipe(o, recipe), recipe


def kappas_from_recipe(o, recipe):
    n, r = o.n, len(recipe[0])
    return [[recipe[i][j] for i in range(n)] for j in range(r)]


def monomial_values(o, kappas, d):
    r = len(kappas)
    vals = {(0,) * r: list(o.one)}
    for g in monomials(r, d):
        if g in vals:
            continue
        j = max(i for i in range(r) if g[i])
        prev = list(g)
        prev[j] -= 1
        vals[g] = o.mul(vals[tuple(prev)], kappas[j])
    return vals


def jet_rows(o, kappas, d):
    """Row per monomial: value and the ``r`` partial derivatives at kappa (``n (r+1)`` ints)."""
    r = len(kappas)
    vals = monomial_values(o, kappas, d)
    rows = []
    for g in monomials(r, d):
        row = list(vals[g])
        for j in range(r):
            if g[j]:
                h = list(g)
                h[j] -= 1
                row.extend(g[j] * x for x in vals[tuple(h)])
            else:
                row.extend([0] * o.n)
        rows.append(row)
    return rows


_CHECK_PRIME = 2147483629


def integer_rank(rows, ncols):
    """Rank over Q: a large-prime rank (a lower bound) confirmed exactly when short."""
    rk = kernels.rank_mod_p([[x % _CHECK_PRIME for x in r] for r in rows], ncols, _CHECK_PRIME)
    if rk == min(len(rows), ncols):
        return rk
    _, _, piv = IL.hnf(rows, ncols)
    return len(piv)


def wellpoised_nf(o, kappas, d):
    """The jets of degree-``<= d`` polynomials at kappa impose ``n (r+1)`` conditions."""
    r = len(kappas)
    return integer_rank(jet_rows(o, kappas, d), o.n * (r + 1)) == o.n * (r + 1)


# --- the relation lattice ------------------------------------------------------

def sup_norm(v):
    return max((abs(x) for x in v), default=0)


def norm2_sq(v):
    return sum(x * x for x in v)


def vector_to_poly(r, monos, v):
    return MultiPoly(ZZ, r, {tuple(g): c for g, c in zip(monos, v) if c})


def relation_lattice_nf(o, kappas, d):
    """LLL-reduced basis of the integer relations of degree ``<= d``.

    Returns ``(basis, monos)`` with the basis sorted by (sup norm, 2-norm).
    """
    r = len(kappas)
    monos = monomials(r, d)
    vals = monomial_values(o, kappas, d)
    rows = [vals[g] for g in monos]
    ker = IL.integer_left_kernel(rows, o.n)
    expected = len(monos) - o.n
    if len(ker) != expected:
        raise IllPoisedError(f"relation lattice has rank {len(ker)}, expected {expected}")
    red = LLL.lll_reduce(ker)
    red = [_sign(v) for v in red]
    red.sort(key=lambda v: (sup_norm(v), norm2_sq(v), [-x for x in v]))
    return red, monos


def _sign(v):
    for x in v:
        if x:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


def evaluate_relation(o, vals, monos, v):
    acc = o.zero()
    for g, c in zip(monos, v):
        if c:
            acc = o.add(acc, o.scale(c, vals[g]))
    return acc


def _det_in_order(o, M):
    r = len(M)
    if r == 1:
        return M[0][0]
    acc = o.zero()
    for j in range(r):
        if o.is_zero(M[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = o.mul(M[0][j], _det_in_order(o, minor))
        acc = o.add(acc, term) if j % 2 == 0 else o.sub(acc, term)
    return acc


def jacobian_at(o, eqs, kappas):
    r = len(kappas)
    d = max((E.total_degree() for E in eqs), default=0)
    vals = monomial_values(o, kappas, d)
    out = []
    for E in eqs:
        row = []
        for j in range(r):
            D = E.derivative(j)
            acc = o.zero()
            for e, c in D.terms.items():
                acc = o.add(acc, o.scale(c, vals[tuple(e)]))
            row.append(acc)
        out.append(row)
    return out


def select_minor_nf(o, eqs, kappas):
    """First (lexicographic) ``r``-subset with nonvanishing Jacobian determinant."""
    r = len(kappas)
    if len(eqs) < r:
        raise NoMinorError("fewer equations than unknowns")
    J = jacobian_at(o, eqs, kappas)
    for idx in combinations(range(len(eqs)), r):
        phi = _det_in_order(o, [J[i] for i in idx])
        if not o.is_zero(phi):
            return list(idx), phi
    raise NoMinorError("every Jacobian minor vanishes")


def generated_order_index(o, kappas, d):
    """Index ``[O : Z[kappa]]`` (0 when kappa does not generate the field)."""
    vals = monomial_values(o, kappas, d)
    L = IL.hnf_basis(list(vals.values()), o.n)
    if len(L) < o.n:
        return 0
    while True:
        gens = list(L)
        for i in range(len(L)):
            for j in range(i, len(L)):
                gens.append(o.mul(L[i], L[j]))
        L2 = IL.hnf_basis(gens, o.n)
        if L2 == L:
            break
        L = L2
    return abs(prod(L[i][i] for i in range(o.n)))


def psi_nf(o, phi, kappas, d):
    """``(Norm(Phi), guard, Psi)`` with ``guard = d_K [O : Z[kappa]]^2``."""
    nphi = o.norm(phi)
    idx = generated_order_index(o, kappas, d)
    guard = o.disc * idx * idx
    return nphi, guard, nphi * guard


# --- the model -----------------------------------------------------------------

@dataclass
class NFModel:
    params: NFParams               # with the effective degree
    recipe: list
    equations: list                # kept relations (MultiPoly over Z in r variables)
    vectors: list                  # all l reduced relation vectors (on ``monos``)
    monos: list
    minor: list
    phi: list
    norm_phi: int
    guard: int
    psi: int
    seed: int
    attempts: dict

    @property
    def d(self):
        return self.params.d

    @property
    def r(self):
        return self.params.r

    def kappas(self, o):
        return kappas_from_recipe(o, self.recipe)

    @property
    def profile(self):
        return [sup_norm(v) for v in self.vectors]


def model_from_recipe(o, params, recipe, seed=0, attempts=None):
    """Build the model for a fixed recipe (raises on ill-poised / degenerate choices)."""
    kappas = kappas_from_recipe(o, recipe)
    d = params.d
    if not wellpoised_nf(o, kappas, d):
        raise IllPoisedError("jets do not impose independent conditions")
    vecs, monos = relation_lattice_nf(o, kappas, d)
    kept = vecs[:params.kept]
    eqs = [vector_to_poly(params.r, monos, v) for v in kept]
    idx, phi = select_minor_nf(o, eqs, kappas)
    nphi, guard, psi = psi_nf(o, phi, kappas, d)
    if psi == 0:
        raise NoMinorError("kappa does not generate the field")
    return NFModel(params, [list(r) for r in recipe], eqs, vecs, monos, idx, phi, nphi,
                   guard, psi, seed, dict(attempts or {}))


def build_model_nf(o, seed=0, retries=10, escalate=True):
    """Seeded retries at ``d = r``; then escalate ``d`` up to ``max(r, 5)``."""
    base = nf_params(o.n, abs(o.disc))
    d_values = [base.r]
    if escalate:
        d_values += list(range(base.r + 1, max(base.r, 5) + 1))
    attempts = {}
    for d in d_values:
        params = base.with_degree(d)
        for attempt in range(retries):
            _, recipe = build_kappas_nf(o, params, seed, (d, attempt))
            attempts[d] = attempt + 1
            try:
                return model_from_recipe(o, params, recipe, seed, attempts)
            except (IllPoisedError, NoMinorError):
                continue
    raise RetryExhaustedError(f"no well-poised configuration after {attempts}")


def model_bounds_nf(o, model):
    """The explicit inequalities as a dict of ``(lhs, rhs, ok)`` (exact integers)."""
    p = model.params
    ell = p.ell
    kappas = model.kappas(o)
    vals = monomial_values(o, kappas, p.d)
    vanish = all(o.is_zero(evaluate_relation(o, vals, model.monos, v))
                 for v in model.vectors)
    prod_sq = prod(norm2_sq(v) for v in model.vectors)
    rhs = 2 ** (ell * (ell - 1) // 2) * ell ** ell * p.frakD ** o.n
    G = p.G
    phi_bound = (G ** p.r * factorial(p.r)) ** o.n
    H = p.H
    kept = model.vectors[:p.kept]
    return {
        "rank": (len(model.vectors), ell, len(model.vectors) == ell),
        "vanishing": (vanish, True, vanish),
        "product": (prod_sq, rhs, prod_sq <= rhs),
        "height_unslacked": (max(sup_norm(v) for v in kept), H,
                             all(sup_norm(v) <= H for v in kept)),
        "norm_phi": (abs(model.norm_phi), phi_bound, abs(model.norm_phi) <= phi_bound),
    }


__all__ = [
    "NFParams", "nf_params", "smallest_r", "height_bound", "coefficient_box",
    "evaluation_bound", "build_kappas_nf", "wellpoised_nf", "relation_lattice_nf",
    "select_minor_nf", "psi_nf", "NFModel", "build_model_nf", "model_bounds_nf",
]
