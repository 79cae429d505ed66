"""Incomplete-intersection models of function fields over finite fields.

Pipeline: parameters ``(r, h, nu)`` -> random elements ``kappa_j`` of
degree-``h`` combinations of the reduced basis -> well-poisedness of the
double point in degree ``d`` -> minimal ``K[x]``-basis of the relations of
total degree ``<= d`` -> a nonvanishing Jacobian minor -> its norm ``Psi``.
"""

from dataclasses import dataclass, field
from math import comb

from ..arith import poly as P
from ..arith.fields import make_relative_extension
from ..arith.multipoly import MultiPoly, monomials
from ..arith.round2 import PolyPID
from ..linalg import matrix as LA
from ..linalg.polymatrix import polymatrix_min_kernel
from ..rng import SeedStream


class IllPoisedError(ArithmeticError):
    pass


class NoMinorError(ArithmeticError):
    pass


class RetryExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class FFParams:
    n: int
    g: int
    q: int
    r: int
    h: int
    nu: int
    d_x: int
    d_y: int
    rho: int


def smallest_r(n):
    r = 1
    while comb(2 * r, r) < n * (r + 1):
        r += 1
    return r


def nu_bound(n, g):
    """``2 + ceil(2(g-1)/n)``."""
    return 2 + -((-2 * (g - 1)) // n)


def ff_params(n, g, q):
    if n < 2 or g < 2:
        raise ValueError("need n >= 2 and g >= 2")
    r = smallest_r(n)
    h = 0
    while q ** (h + 1) <= n * r * (r + 1):
        h += 1
    nu = nu_bound(n, g)
    d_x = r * (h + nu)
    return FFParams(n, g, q, r, h, nu, d_x, r, d_x + r * (nu + h))


# --- kappas -----------------------------------------------------------------

def build_kappas(o, params, seed, attempt=0):
    """``kappa_j = sum_i u_{i,j} w_i`` with ``deg u_{i,j} <= h`` drawn from the seed.

    Returns ``(kappas, recipe)`` where ``recipe[i][j] = u_{i,j}``.
    """
    K = o.K
    rng = SeedStream(seed, ("ff", "kappa", attempt))
    recipe = [[P.normalize(K, [K.from_code(rng.randbelow(K.order)) for _ in range(params.h + 1)])
               for _ in range(params.r)] for _ in range(o.n)]
    return kappas_from_recipe(o, recipe), recipe


def kappas_from_recipe(o, recipe):
    n, r = o.n, len(recipe[0])
    return [[recipe[i][j] for i in range(n)] for j in range(r)]


def monomial_values(o, kappas, d):
    """Dict exponent -> value in the order of ``kappa^gamma`` for ``|gamma| <= d``."""
    r = len(kappas)
    vals = {(0,) * r: o.one()}
    for gamma in monomials(r, d):
        if gamma in vals:
            continue
        j = max(i for i in range(r) if gamma[i])
        prev = list(gamma)
        prev[j] -= 1
        vals[gamma] = o.mul(vals[tuple(prev)], kappas[j])
    return vals


def _jet_matrix(o, kappas, d):
    """Rows indexed by monomials: (value, d/dy_1, ..., d/dy_r) in w-coordinates."""
    K, r = o.K, len(kappas)
    vals = monomial_values(o, kappas, d)
    rows = []
    for gamma in monomials(r, d):
        row = list(vals[gamma])
        for j in range(r):
            if gamma[j]:
                prev = list(gamma)
                prev[j] -= 1
                c = (K.from_int(gamma[j]),)
                row.extend(P.mul(K, c, v) for v in vals[tuple(prev)])
            else:
                row.extend([()] * o.n)
        rows.append(row)
    return rows


def _bareiss_rank(R, M, ncols):
    """Rank of a matrix over an integral domain by fraction-free elimination."""
    m = [list(r) for r in M]
    nrows = len(m)
    rank = 0
    prev = R.one
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if not R.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = R.exact_div(R.sub(R.mul(p, m[i][j]), R.mul(m[i][c], m[rank][j])), prev)
            m[i][c] = R.zero
        prev = p
        rank += 1
    return rank


def rank_over_Kx(K, M, ncols, seed=0):
    """Rank over ``K(x)`` of a matrix of polynomials.

    Evaluates at a random point of a large extension of ``K`` (a lower bound
    that is exact with high probability); falls back to fraction-free
    elimination when the evaluation is rank deficient.
    """
    if not M:
        return 0
    target = min(len(M), ncols)
    dmax = max((P.degree(c) for row in M for c in row), default=0)
    bound = max(1, dmax * target) * 1000
    k = 1
    while K.order ** k < bound:
        k += 1
    E = make_relative_extension(K, k) if k > 1 else K
    rng = SeedStream(seed, ("rank", "point"))
    for _ in range(2):
        pt = E.from_code(rng.randbelow(E.order))
        lift = (lambda c: E.lift_from(K, c)) if E is not K else (lambda c: c)
        Me = [[P.evaluate_in(E, c, pt, lift) if c else E.zero for c in row] for row in M]
        rk = LA.rank(E, Me, ncols)
        if rk == target:
            return rk
    return _bareiss_rank(PolyPID(K), M, ncols)


def wellpoised_check(o, kappas, d, seed=0):
    """True iff the double point imposes ``n(r+1)`` conditions in degree ``d``."""
    r = len(kappas)
    need = o.n * (r + 1)
    if comb(d + r, d) < need:
        return False
    M = _jet_matrix(o, kappas, d)
    return rank_over_Kx(o.K, M, need, seed) == need


# --- relations -------------------------------------------------------------------

def relation_matrix(o, kappas, d):
    """Rows: w-coordinates of ``kappa^gamma`` for the monomials of degree ``<= d``."""
    vals = monomial_values(o, kappas, d)
    return [vals[g] for g in monomials(len(kappas), d)]


def row_to_multipoly(K, r, monos, row):
    terms = {}
    for gamma, c in zip(monos, row):
        for k, a in enumerate(c):
            if not K.is_zero(a):
                terms[(k,) + tuple(gamma)] = a
    return MultiPoly(K, r + 1, terms)


def evaluate_at_kappas(o, E, kappas):
    """``E(x, kappa)`` as an element of the order (``E`` in variables x, y_1..y_r)."""
    K = o.K
    r = len(kappas)
    d = max((sum(e[1:]) for e in E.terms), default=0)
    vals = monomial_values(o, kappas, d)
    acc = o.zero()
    coeff = {}
    for e, c in E.terms.items():
        gamma = e[1:]
        poly = coeff.get(gamma, ())
        coeff[gamma] = P.add(K, poly, P.shift(K, (c,), e[0]))
    for gamma, c in coeff.items():
        acc = o.add(acc, o.scale(c, vals[gamma]))
    return acc


def relations_ff(o, kappas, d):
    """Minimal-degree relations of total degree ``<= d``.

    Returns ``(all_equations, profile)`` where equations are
    :class:`MultiPoly` in ``(x, y_1..y_r)`` sorted by degree, ``profile[i]``
    is the x-degree ``e_i``.  Raises :class:`IllPoisedError` if the kernel
    does not have rank ``C(d+r,d) - n``.
    """
    K, r = o.K, len(kappas)
    monos = monomials(r, d)
    M = relation_matrix(o, kappas, d)
    basis, profile = polymatrix_min_kernel(K, M, len(monos))
    ell = len(monos) - o.n
    if len(basis) != ell:
        raise IllPoisedError(f"relation kernel has rank {len(basis)}, expected {ell}")
    eqs = [row_to_multipoly(K, r, monos, row) for row in basis]
    for E in eqs:
        if not o.is_zero(evaluate_at_kappas(o, E, kappas)):
            raise ArithmeticError("relation does not vanish")  # pragma: no cover
    return eqs, profile


# --- minor and Psi -------------------------------------------------------------------

def _det_in_order(o, M):
    """Laplace expansion (division-free) of an r x r matrix with entries in the order."""
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


def jacobian_rows(o, eqs, kappas):
    r = len(kappas)
    return [[evaluate_at_kappas(o, E.derivative(1 + j), kappas) for j in range(r)] for E in eqs]


def select_minor_ff(o, eqs, kappas):
    """First (lexicographic) r-subset of ``eqs`` whose Jacobian minor at kappa is nonzero.

    Returns ``(indices, Phi)`` with ``Phi`` an element of the order.
    """
    from itertools import combinations
    r = len(kappas)
    if len(eqs) < r:
        raise NoMinorError("fewer equations than unknowns")
    J = jacobian_rows(o, eqs, kappas)
    for idx in combinations(range(len(eqs)), r):
        phi = _det_in_order(o, [J[i] for i in idx])
        if not o.is_zero(phi):
            return list(idx), phi
    raise NoMinorError("every Jacobian minor vanishes")


def psi_norm_ff(o, phi, guard=True):
    """``Norm(Phi)`` times (optionally) the discriminant of the basis."""
    psi = o.norm(phi)
    if guard:
        psi = P.mul(o.K, psi, o.discriminant())
    return psi


def psi_degree_bound(params, d, n, guard_degree):
    hn = params.h + params.nu
    d_x = d * hn
    return n * (hn * params.r * (params.r - 1) + params.r * d_x) + guard_degree


def irreducibles_of_degree(K, e):
    """Monic irreducibles of degree ``e`` in lexicographic (code) order."""
    q = K.order
    if e == 1:
        for c in range(q):
            yield (K.from_code(c), K.one)
        return
    for c in range(q ** e):
        coeffs = []
        v = c
        for _ in range(e):
            v, dgt = divmod(v, q)
            coeffs.append(K.from_code(dgt))
        if K.is_zero(coeffs[0]):
            continue
        f = tuple(coeffs) + (K.one,)
        if P.is_irreducible(K, f):
            yield f


def find_coprime_irreducible(psi, K):
    """Lowest-degree (then lexicographically first) monic irreducible prime to ``psi``.

    Every candidate divides ``x^(q^k) - x`` for the least ``k`` with
    ``q^k > deg psi``; such a candidate always exists.
    """
    psi = P.normalize(K, psi)
    if not psi:
        raise ValueError("psi must be nonzero")
    q = K.order
    dpsi = P.degree(psi)
    k = 1
    while q ** k <= dpsi:
        k += 1
    for e in range(1, k + 1):
        if k % e:
            continue
        for f in irreducibles_of_degree(K, e):
            if P.degree(P.gcd(K, f, psi)) == 0:
                return f
    raise AssertionError("no coprime irreducible found")  # pragma: no cover


# --- the model -------------------------------------------------------------------------

@dataclass
class FFModel:
    params: FFParams
    d: int
    recipe: list
    equations: list                  # kept equations (MultiPoly)
    profile: list                    # e_i for all ell relations
    minor: list
    psi: tuple
    guard_degree: int
    seed: int
    attempts: dict = field(default_factory=dict)
    all_equations: list = field(default=None, repr=False)

    @property
    def d_x(self):
        return self.d * (self.params.h + self.params.nu)

    @property
    def d_y(self):
        return self.d

    @property
    def rho(self):
        return 2 * self.d_x

    def kappas(self, o):
        return kappas_from_recipe(o, self.recipe)

    def coefficient_count(self):
        return sum(len(E.terms) for E in self.equations)


def build_model(o, seed=0, retries=10, escalate=True):
    """Run the pipeline with seeded retries; escalate ``d`` after ``retries`` failures."""
    if o.a is None:
        raise ValueError("the order must be Maroni-reduced first")
    params = ff_params(o.n, o.genus, o.K.order)
    d_values = [params.r]
    if escalate:
        d_values += list(range(params.r + 1, max(params.r, 5) + 1))
    attempts = {}
    for d in d_values:
        for attempt in range(retries):
            kappas, recipe = build_kappas(o, params, seed, (d, attempt))
            attempts[d] = attempt + 1
            if not wellpoised_check(o, kappas, d, seed):
                continue
            try:
                eqs, profile = relations_ff(o, kappas, d)
            except IllPoisedError:
                continue
            ell = len(eqs)
            kept = eqs[:ell + 1 - o.n]
            try:
                idx, phi = select_minor_ff(o, kept, kappas)
            except NoMinorError:
                continue
            disc = o.discriminant()
            psi = psi_norm_ff(o, phi)
            return FFModel(params, d, recipe, kept, profile, idx, psi, P.degree(disc),
                           seed, attempts, eqs)
    raise RetryExhaustedError(f"no well-poised configuration after {attempts}")


def model_bounds(o, model):
    """The explicit inequalities of the construction as a dict of (lhs, rhs, ok)."""
    p = model.params
    d = model.d
    hn = p.h + p.nu
    a = sum(o.a)
    ell = len(model.profile)
    kept = ell + 1 - o.n
    sum_e = sum(model.profile)
    out = {
        "sum_e": (sum_e, o.n * hn * d - a, sum_e <= o.n * hn * d - a),
        "max_kept_e": (max(model.profile[:kept]), hn * d,
                       all(e <= hn * d for e in model.profile[:kept])),
        "maroni_top": (o.a[-1], p.nu, o.a[-1] <= p.nu),
        "psi_degree": (P.degree(model.psi), psi_degree_bound(p, d, o.n, model.guard_degree),
                       P.degree(model.psi) <= psi_degree_bound(p, d, o.n, model.guard_degree)),
    }
    return out


__all__ = [
    "FFParams", "ff_params", "build_kappas", "wellpoised_check", "relations_ff",
    "select_minor_ff", "psi_norm_ff", "find_coprime_irreducible", "FFModel", "build_model",
]
