"""p-adic interpolant certificates for number fields and reconstruction.

A certificate stores a prime ``p``, an inertia degree ``s``, a precision
``m`` and the images ``b_j`` of ``kappa_j`` in ``Z_{p^s} / p^m``.  Integer
polynomials of total degree ``<= d`` and height ``<= H`` that vanish at
``b`` are exactly the relations of the model once ``p^{ms} > G^n``; the
reconstruction recovers them by lattice reduction and rebuilds the field.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import sympy

from .. import kernels
from ..arith.algebra import NotEtaleError, factor_fiber_algebra
from ..arith.fields import PrimeField, element_degree, make_extension
from ..arith.hensel import HenselError, hensel_lift_point
from ..arith.multipoly import monomials
from ..arith.padic import TruncLocalRing
from ..linalg import intlattice as IL
from ..linalg import lll as LLL
from ..linalg import matrix as LA
from ..rng import SeedStream
from .model import sup_norm, vector_to_poly


class CertificateError(ArithmeticError):
    pass


@dataclass
class NFCertificate:
    p: int
    s: int
    m: int
    d: int
    H: int
    b: list                  # r tuples of s integers in [0, p^m)
    n: int = None

    @property
    def r(self):
        return len(self.b)

    @property
    def ring(self):
        return TruncLocalRing(self.p, self.s, self.m)

    @property
    def modulus(self):
        return list(self.ring.modulus)

    def digits(self):
        """Little-endian base-p digits, digit-major: for each b_j, for each k, s digits."""
        R = self.ring
        out = []
        for bj in self.b:
            for row in R.digits(bj):
                out.extend(row)
        return out

    @classmethod
    def from_digits(cls, p, s, m, d, H, r, digits, n=None):
        R = TruncLocalRing(p, s, m)
        if len(digits) != r * m * s:
            raise CertificateError("wrong number of digits")
        if any(not 0 <= x < p for x in digits):
            raise CertificateError("digit out of range")
        b = []
        for j in range(r):
            chunk = digits[j * m * s:(j + 1) * m * s]
            rows = [chunk[k * s:(k + 1) * s] for k in range(m)]
            b.append(tuple(R.from_digits(rows)))
        return cls(p, s, m, d, H, b, n)

    def payload_bits(self):
        return len(self.digits()) * (self.p - 1).bit_length()

    def truncated(self, m):
        N = self.p ** m
        return NFCertificate(self.p, self.s, m, self.d, self.H,
                             [tuple(x % N for x in bj) for bj in self.b], self.n)


# --- prime, residue field and precision ------------------------------------------

def find_prime(psi):
    """Smallest prime not dividing ``psi`` (``psi != 0``)."""
    if psi == 0:
        raise ValueError("Psi must be nonzero")
    p = 2
    while psi % p == 0:
        p = sympy.nextprime(p)
    return int(p)


def residue_split(o, p, seed=0):
    """Factors of ``O / p`` as fields (deterministic order); the first gives ``s``."""
    F = PrimeField(p)
    table = [[[x % p for x in v] for v in row] for row in o.table]
    one = [x % p for x in o.one]
    try:
        return factor_fiber_algebra(F, table, one, seed)
    except NotEtaleError as exc:
        raise CertificateError(f"{p} ramifies") from exc


def precision_target(G, n, p, s):
    """Smallest ``m >= 1`` with ``p^{ms} > G^n``."""
    target = G ** n
    q = p ** s
    m, qm = 1, q
    while qm <= target:
        m += 1
        qm *= q
    return m


def make_certificate_nf(o, model, p=None, seed=0):
    """Image of the model's ``kappa`` in ``Z_{p^s}/p^m`` at a prime above ``p``."""
    p = find_prime(model.psi) if p is None else p
    if model.psi % p == 0:
        raise CertificateError("p divides Psi")
    kappas = model.kappas(o)
    eqs = [model.equations[i] for i in model.minor]
    G = model.params.G
    for fac in residue_split(o, p, seed):
        s = fac.degree
        pts = [fac.project([x % p for x in k]) for k in kappas]
        S = fac.field
        deg = 1
        for a in pts:
            deg = lcm(deg, element_degree(S, a))
        if deg != s:
            continue
        m = precision_target(G, o.n, p, s)
        R1 = TruncLocalRing(p, s, 1)
        x0 = [R1.from_residue(a) for a in pts]
        try:
            b = hensel_lift_point(eqs, x0, R1, m)
        except HenselError as exc:
            raise CertificateError(str(exc)) from exc
        return NFCertificate(p, s, m, model.d, model.params.H, [tuple(v) for v in b], o.n)
    raise CertificateError("no residue component is generated by kappa")


# --- lattices of relations modulo p^m ----------------------------------------------

def _inverse_mod(W, N, p):
    """Inverse of a square integer matrix modulo ``N = p^k`` (invertible mod p)."""
    n = len(W)
    M = [[x % N for x in row] + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(W)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] % p), None)
        if piv is None:
            raise ZeroDivisionError("matrix not invertible mod p")
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, N)
        M[c] = [(x * inv) % N for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % N for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def vanishing_lattice(values, p, k):
    """Basis of ``{c in Z^N : sum_i c_i values_i = 0 mod p^k}``.

    ``values`` are ``N`` vectors in ``(Z/p^k)^s``.  When ``s`` of them are
    independent modulo ``p`` the basis is written down directly; otherwise a
    saturated integer kernel is used.
    """
    N = len(values)
    s = len(values[0]) if values else 0
    mod = p ** k
    chosen, rows = [], []
    for i, v in enumerate(values):
        cand = rows + [[x % p for x in v]]
        if kernels.rank_mod_p(cand, s, p) > len(rows):
            rows = cand
            chosen.append(i)
            if len(chosen) == s:
                break
    if len(chosen) == s:
        Winv = _inverse_mod([values[i] for i in chosen], mod, p)
        basis = []
        pos = {i: t for t, i in enumerate(chosen)}
        for i in range(N):
            if i in pos:
                continue
            w = [sum(values[i][a] * Winv[a][b] for a in range(s)) % mod for b in range(s)]
            vec = [0] * N
            vec[i] = 1
            for t, j in enumerate(chosen):
                vec[j] = -w[t]
            basis.append(vec)
        for j in chosen:
            vec = [0] * N
            vec[j] = mod
            basis.append(vec)
        return basis
    big = [list(v) for v in values] + [[mod if a == b else 0 for b in range(s)]
                                       for a in range(s)]
    ker = IL.integer_left_kernel(big, s)
    return [v[:N] for v in ker]


def monomial_values_local(R, point, d):
    r = len(point)
    vals = {(0,) * r: R.one}
    for g in monomials(r, d):
        if g in vals:
            continue
        j = max(i for i in range(r) if g[i])
        prev = list(g)
        prev[j] -= 1
        vals[g] = R.mul(vals[tuple(prev)], R.coerce(point[j]))
    return vals


def relation_lattice_local(cert):
    """LLL-reduced basis of the degree-``<= d`` relations of ``b`` modulo ``p^m``."""
    R = cert.ring
    monos = monomials(cert.r, cert.d)
    vals = monomial_values_local(R, cert.b, cert.d)
    basis = vanishing_lattice([list(vals[g]) for g in monos], cert.p, cert.m)
    red = LLL.lll_reduce(basis)
    return red, monos


def short_vectors_sup(basis, bound):
    """All nonzero lattice vectors with sup norm ``<= bound`` (exhaustive enumeration).

    Enumerates the ball of radius ``sqrt(N) * bound`` over the Gram–Schmidt
    decomposition of ``basis`` and filters by the sup norm; meant for small
    dimensions.  Returns the vectors sorted, one of each ``±`` pair.
    """
    k = len(basis)
    if k == 0:
        return []
    N = len(basis[0])
    mu, bn = LLL.gram_schmidt_exact(basis)
    R2 = Fraction(N * bound * bound)
    out = []
    coeffs = [0] * k

    def rec(i, rem):
        if i < 0:
            v = [sum(coeffs[t] * basis[t][c] for t in range(k)) for c in range(N)]
            if any(v) and sup_norm(v) <= bound:
                out.append(v)
            return
        center = -sum(coeffs[j] * mu[j][i] for j in range(i + 1, k))
        # (x - center)^2 * bn[i] <= rem
        rad = rem / bn[i]
        lo = _ceil_frac(center - _sqrt_upper(rad))
        hi = _floor_frac(center + _sqrt_upper(rad))
        for x in range(lo, hi + 1):
            t = (x - center) ** 2 * bn[i]
            if t <= rem:
                coeffs[i] = x
                rec(i - 1, rem - t)
        coeffs[i] = 0

    rec(k - 1, R2)
    canon = set()
    for v in out:
        first = next(x for x in v if x)
        canon.add(tuple(v) if first > 0 else tuple(-x for x in v))
    return sorted(list(v) for v in canon)


def _sqrt_upper(q):
    from math import isqrt
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    scale = 1 << 32
    r = isqrt(q.numerator * scale * scale // q.denominator) + 1
    return Fraction(r, scale)


def _ceil_frac(q):
    return -((-q.numerator) // q.denominator)


def _floor_frac(q):
    return q.numerator // q.denominator


def in_lattice_span(J, v):
    """Exact membership of ``v`` in the integer span of ``J``."""
    if not J:
        return not any(v)
    N = len(v)
    return IL.hnf_basis(J, N) == IL.hnf_basis(list(J) + [list(v)], N)


# --- reconstruction ----------------------------------------------------------------

@dataclass
class NFReconstruction:
    valid: bool
    verdict: str              # "isomorphic", "not-isomorphic", "valid" or "invalid"
    reason: str
    J: list = field(default_factory=list)
    monos: list = field(default_factory=list)
    witness: list = field(default_factory=list)
    lifted: list = field(default_factory=list)
    theta: list = field(default_factory=list)
    minpoly: list = field(default_factory=list)


def _gradient(E, S, point, r):
    return [E.derivative(j).evaluate(point, S, lambda c: S.from_int(c)) for j in range(r)]


def _theta_coefficients(r, n, seed, attempt):
    if attempt == 0:
        return [1] * r
    rng = SeedStream(seed, ("nf", "theta", attempt))
    return [rng.randint(0, n * n) for _ in range(r)]


def recover_minimal_polynomial(R, theta, n):
    """Shortest integer polynomial of degree ``<= n`` vanishing at ``theta`` modulo ``p^k``."""
    powers = [R.one]
    for _ in range(n):
        powers.append(R.mul(powers[-1], theta))
    basis = vanishing_lattice([list(v) for v in powers], R.p, R.m)
    red = LLL.lll_reduce(basis)
    v = min(red, key=lambda w: (sum(x * x for x in w), w))
    while v and v[-1] == 0:
        v = v[:-1]
    if v and v[-1] < 0:
        v = [-x for x in v]
    return v


def is_irreducible_Z(f):
    x = sympy.Symbol("x")
    return len(f) >= 2 and sympy.Poly(list(reversed(f)), x, domain="ZZ").is_irreducible


def has_root_in_field(g, f_ref):
    """Does ``f_ref`` have a root in ``Q[y]/g``?  (``g`` irreducible.)

    Factors of ``f_ref`` over ``Q[y]/g`` of degree ``e`` correspond to factors
    of the norm ``Res_y(g(y), f_ref(x - k y))`` of degree ``e deg g`` once the
    norm is squarefree; a linear factor exists iff a factor of degree
    ``deg g`` does.
    """
    x, y = sympy.symbols("x y")
    G = sympy.Poly(list(reversed(g)), y)
    F = sympy.Poly(list(reversed(f_ref)), x)
    n = G.degree()
    for k in range(0, 50):
        Fk = sympy.Poly(F.as_expr().subs(x, x - k * y), x, y)
        Nrm = sympy.Poly(sympy.resultant(G.as_expr(), Fk.as_expr(), y), x)
        if sympy.gcd(Nrm, Nrm.diff(x)).degree() == 0:
            _, facs = sympy.factor_list(Nrm)
            return any(fa.degree() == n for fa, _ in facs)
    raise ArithmeticError("no squarefree norm found")


def reconstruct_nf(cert, reference=None, seed=0, max_theta=20):
    """Recover the relations and the field from a certificate.

    Steps: reduce the lattice of relations modulo ``p^m``; keep the vectors
    of height ``<= H`` as ``J``; find ``r`` of them with a unit Jacobian;
    Hensel-lift ``b`` to precision ``2m`` and check that all of ``J`` still
    vanishes; recover the minimal polynomial of a linear form in ``b``.
    """
    r, p, s = cert.r, cert.p, cert.s
    try:
        red, monos = relation_lattice_local(cert)
    except (ZeroDivisionError, ArithmeticError) as exc:
        return NFReconstruction(False, "invalid", f"lattice: {exc}")
    J = sorted((v if next(x for x in v if x) > 0 else [-x for x in v])
               for v in red if sup_norm(v) <= cert.H)
    n = cert.n if cert.n is not None else len(monos) - len(J)
    if len(J) != len(monos) - n:
        return NFReconstruction(False, "invalid", "relation rank mismatch", J, monos)
    S = make_extension(p, s)
    R = cert.ring
    res = [R.residue(R.coerce(bj)) for bj in cert.b]
    polys = [vector_to_poly(r, monos, v) for v in J]
    chosen, grads = [], []
    for i, E in enumerate(polys):
        g = _gradient(E, S, res, r)
        if LA.rank(S, grads + [g], r) > len(grads):
            chosen.append(i)
            grads.append(g)
            if len(chosen) == r:
                break
    if len(chosen) < r:
        return NFReconstruction(False, "invalid", "no unit Jacobian among the relations",
                                J, monos, chosen)
    try:
        lifted = hensel_lift_point([polys[i] for i in chosen], [R.coerce(bj) for bj in cert.b],
                                   R, 2 * cert.m)
    except HenselError as exc:
        return NFReconstruction(False, "invalid", f"lifting failed: {exc}", J, monos, chosen)
    R2 = R.with_precision(2 * cert.m)
    vals = monomial_values_local(R2, lifted, cert.d)
    for v in J:
        acc = R2.zero
        for g, c in zip(monos, v):
            if c:
                acc = R2.add(acc, R2.mul(R2.from_int(c), vals[g]))
        if not R2.is_zero(acc):
            return NFReconstruction(False, "invalid", "lifted point leaves J", J, monos,
                                    chosen, list(lifted))
    for attempt in range(max_theta):
        c = _theta_coefficients(r, n, seed, attempt)
        theta = R2.zero
        for cj, bj in zip(c, lifted):
            theta = R2.add(theta, R2.mul(R2.from_int(cj), bj))
        g = recover_minimal_polynomial(R2, theta, n)
        if len(g) == n + 1 and is_irreducible_Z(g):
            break
    else:
        return NFReconstruction(False, "invalid", "no primitive element of degree n",
                                J, monos, chosen, list(lifted))
    verdict = "valid"
    if reference is not None:
        verdict = "isomorphic" if (len(reference) == len(g)
                                   and has_root_in_field(g, reference)) else "not-isomorphic"
    return NFReconstruction(True, verdict, "ok", J, monos, chosen, list(lifted), c, g)
