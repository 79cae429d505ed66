"""Interpolant certificates for function fields and reconstruction from them.

A certificate fixes an irreducible ``F(x)`` (``L = K[x]/F``, ``lambda`` the
class of ``x``), a residue field ``S`` of a point ``sigma`` above
``lambda``, a precision ``m`` and the truncated expansions
``b_j = kappa_j(sigma) + ... mod t^m`` in ``t = x - lambda``.  The relations
of bidegree ``<= (d_x, d_y)`` vanishing on the truncated point are exactly
the relations of the model, and ``m l s > n rho`` makes that automatic.
"""

from dataclasses import dataclass
from math import lcm

from ..arith import poly as P
from ..arith.algebra import NotEtaleError, factor_fiber_algebra
from ..arith.fields import ExtField, element_degree
from ..arith.hensel import HenselError, hensel_lift_point
from ..arith.multipoly import MultiPoly, monomials
from ..arith.series import SeriesRing
from ..linalg import matrix as LA
from .model import monomial_values


class CertificateError(ArithmeticError):
    pass


@dataclass
class FFCertificate:
    K: object
    F: tuple              # irreducible over K, defines L
    s: int                # degree of S over L
    m: int
    d_x: int
    d_y: int
    b: list               # r tuples of m elements of S
    n: int = None
    rho: int = None

    @property
    def l(self):
        return P.degree(self.F)

    @property
    def r(self):
        return len(self.b)

    @property
    def L(self):
        return residue_extension(self.K, self.F)

    @property
    def S(self):
        return _S_field(self.L, self.s)

    @property
    def lam(self):
        return lambda_of(self.K, self.F)

    def payload_elements(self):
        """The stored K-coordinates of the digits (r * m * l * s elements of F_q)."""
        out = []
        for bj in self.b:
            for c in bj:
                out.extend(coords_over(self.S, self.K, c))
        return out

    def payload_bits(self):
        return len(self.payload_elements()) * (self.K.order - 1).bit_length()

    def truncated(self, m):
        return FFCertificate(self.K, self.F, self.s, m, self.d_x, self.d_y,
                             [tuple(bj[:m]) for bj in self.b], self.n, self.rho)


def residue_extension(K, F):
    """``L = K[x]/F``; for ``deg F = 1`` this is ``K`` itself."""
    F = P.normalize(K, F)
    if P.degree(F) == 1:
        return K
    return ExtField(K, P.monic(K, F))


def _S_field(L, s):
    from ..arith.fields import make_relative_extension
    return make_relative_extension(L, s)


def coords_over(E, K, a):
    """Coordinates of ``a`` in the tower ``E / ... / K`` as a flat list of K-elements."""
    if E == K:
        return [a]
    out = []
    for x in a:
        out.extend(coords_over(E.base, K, x))
    return out


def from_coords_over(E, K, cs):
    if E == K:
        return cs[0]
    w = len(cs) // E.degree
    return tuple(from_coords_over(E.base, K, cs[i * w:(i + 1) * w]) for i in range(E.degree))


def lift_to(E, K, c):
    return c if E == K else E.lift_from(K, c)


def lambda_of(K, F):
    L = residue_extension(K, F)
    if L == K:
        return K.neg(P.monic(K, F)[0])
    return L.gen


def precision_for(n, rho, l, s):
    """Smallest ``m`` with ``m l s > n rho``."""
    return (n * rho) // (l * s) + 1


def fiber_point(o, kappas, F, seed=0):
    """Factors of the fiber above ``F`` and, for each, the residue point of kappa."""
    K = o.K
    L = residue_extension(K, F)
    lam = lambda_of(K, F)
    lift = (lambda c: lift_to(L, K, c))
    table = [[[P.evaluate_in(L, c, lam, lift) if c else L.zero for c in v] for v in row]
             for row in o.table]
    one = [L.one] + [L.zero] * (o.n - 1)
    factors = factor_fiber_algebra(L, table, one, seed)
    out = []
    for fac in factors:
        pts = []
        for kap in kappas:
            coords = [P.evaluate_in(L, c, lam, lift) if c else L.zero for c in kap]
            pts.append(fac.project(coords))
        out.append((fac, pts))
    return L, lam, out


def generates_residue_field(K, S, elems, target_degree):
    """True iff ``elems`` generate ``S`` (of degree ``target_degree`` over K) as a K-algebra."""
    deg = 1
    for a in elems:
        deg = lcm(deg, element_degree(S, a, over=K))
    return deg == target_degree


def make_certificate_ff(o, model, F, seed=0):
    """Expand the model's kappa at a point above a root of ``F``."""
    K = o.K
    kappas = model.kappas(o)
    try:
        L, lam, facs = fiber_point(o, kappas, F, seed)
    except NotEtaleError as exc:
        raise CertificateError("fiber above F is not étale") from exc
    l = P.degree(F)
    eqs = [model.equations[i] for i in model.minor]
    for fac, pts in facs:
        S = fac.field
        s = fac.degree
        lamS = lift_to(S, L, lam)
        if not generates_residue_field(K, S, [lamS] + list(pts), l * s):
            continue
        m = precision_for(o.n, model.rho, l, s)
        ring1 = SeriesRing(S, 1)
        x0 = [(pt,) for pt in pts]
        try:
            b = hensel_lift_point(eqs, x0, ring1, m,
                                  fixed=lambda R: (R.add(R.scalar(lamS), R.t),),
                                  lift=lambda R, c: R.scalar(lift_to(S, K, c)))
        except HenselError as exc:
            raise CertificateError(str(exc)) from exc
        return FFCertificate(K, tuple(P.monic(K, F)), s, m, model.d_x, model.d_y,
                             [tuple(v) for v in b], o.n, model.rho)
    raise CertificateError("no residue component is generated by the point")


# --- relation spaces in the bidegree box ---------------------------------------------

def box_monomials(r, d_x, d_y):
    """``(k, gamma)`` for ``x^k y^gamma`` with ``k <= d_x`` and ``|gamma| <= d_y``."""
    return [(k, g) for g in monomials(r, d_y) for k in range(d_x + 1)]


def box_polynomial(K, r, box, vec):
    return MultiPoly(K, r + 1, {(k,) + tuple(g): c for (k, g), c in zip(box, vec)
                                if not K.is_zero(c)})


def exact_relation_space(o, kappas, d_x, d_y):
    """RREF basis (over K) of the polynomials in the box vanishing at kappa."""
    K, r = o.K, len(kappas)
    vals = monomial_values(o, kappas, d_y)
    box = box_monomials(r, d_x, d_y)
    width = d_x + max((P.degree(c) for v in vals.values() for c in v), default=0) + 1
    rows = []
    for k, g in box:
        row = []
        for c in vals[g]:
            sh = P.shift(K, c, k) if c else ()
            row.extend(list(sh) + [K.zero] * (width - len(sh)))
        rows.append(row)
    ker = LA.left_kernel(K, rows, len(box))
    return LA.row_space_rref(K, ker, len(box))


def series_relation_space(cert):
    """RREF basis of the box polynomials vanishing at the truncated point."""
    K, S, m = cert.K, cert.S, cert.m
    R = SeriesRing(S, m)
    lamS = lift_to(S, cert.L, cert.lam)
    a = R.add(R.scalar(lamS), R.t)
    r = cert.r
    box = box_monomials(r, cert.d_x, cert.d_y)
    xp = [R.one]
    for _ in range(cert.d_x):
        xp.append(R.mul(xp[-1], a))
    yv = {(0,) * r: R.one}
    for g in monomials(r, cert.d_y):
        if g in yv:
            continue
        j = max(i for i in range(r) if g[i])
        prev = list(g)
        prev[j] -= 1
        yv[g] = R.mul(yv[tuple(prev)], R.coerce(cert.b[j]))
    rows = []
    for k, g in box:
        v = R.mul(xp[k], yv[g])
        row = []
        for c in v:
            row.extend(coords_over(S, K, c))
        rows.append(row)
    ker = LA.left_kernel(K, rows, len(box))
    return LA.row_space_rref(K, ker, len(box)), box


@dataclass
class FFReconstruction:
    valid: bool
    reason: str
    relations: list          # RREF rows over K (coefficient vectors on the box)
    box: list
    witness: list            # indices of the r unit-Jacobian relations
    lifted: list             # point at precision 2m

    def polynomials(self, K, r):
        return [box_polynomial(K, r, self.box, v) for v in self.relations]


def _grad_at(E, S, K, point, r):
    return [E.derivative(1 + j).evaluate(point, S, lambda c: lift_to(S, K, c)) for j in range(r)]


def reconstruct_ff(cert):
    """Recover the relation space from a certificate and certify the interpolant.

    The certificate is valid when ``r`` of the recovered relations have a
    unit Jacobian at ``t = 0`` and the Hensel lift of the digits to
    precision ``2m`` still annihilates every recovered relation.
    """
    K, S, r = cert.K, cert.S, cert.r
    rel, box = series_relation_space(cert)
    if not rel:
        return FFReconstruction(False, "no relations in the box", [], box, [], [])
    polys = [box_polynomial(K, r, box, v) for v in rel]
    lamS = lift_to(S, cert.L, cert.lam)
    res_pt = [lamS] + [bj[0] for bj in cert.b]
    chosen, grads = [], []
    for i, E in enumerate(polys):
        g = _grad_at(E, S, K, res_pt, r)
        if LA.rank(S, grads + [g], r) > len(grads):
            chosen.append(i)
            grads.append(g)
            if len(chosen) == r:
                break
    if len(chosen) < r:
        return FFReconstruction(False, "no unit Jacobian among the relations", rel, box, chosen, [])
    eqs = [polys[i] for i in chosen]
    R = SeriesRing(S, cert.m)
    fixed = lambda Rw: (Rw.add(Rw.scalar(lamS), Rw.t),)
    lift = lambda Rw, c: Rw.scalar(lift_to(S, K, c))
    try:
        lifted = hensel_lift_point(eqs, [R.coerce(bj) for bj in cert.b], R, 2 * cert.m,
                                   fixed=fixed, lift=lift)
    except HenselError as exc:
        return FFReconstruction(False, f"lifting failed: {exc}", rel, box, chosen, [])
    # every recovered relation must vanish at the lift: the relation space at
    # precision 2m (a subspace of ``rel``) must still be all of ``rel``
    lifted_cert = FFCertificate(K, cert.F, cert.s, 2 * cert.m, cert.d_x, cert.d_y,
                                [tuple(v) for v in lifted], cert.n, cert.rho)
    rel2, _ = series_relation_space(lifted_cert)
    if rel2 != rel:
        return FFReconstruction(False, "lifted point leaves the relation space", rel, box,
                                chosen, list(lifted))
    return FFReconstruction(True, "ok", rel, box, chosen, list(lifted))
