"""Number fields: maximal orders, small integers, relation lattices and p-adic certificates."""

import functools
from fractions import Fraction
from math import comb, isqrt

import pytest
import sympy
from hypothesis import given, strategies as st

import fieldlists
from shortmodels.arith.multipoly import MultiPoly
from shortmodels.linalg import intlattice as IL
from shortmodels.nf.certificate import (NFCertificate, find_prime, in_lattice_span,
                                        make_certificate_nf, precision_target,
                                        reconstruct_nf, relation_lattice_local, residue_split)
from shortmodels.nf.model import (build_kappas_nf, build_model_nf,
                                  kappas_from_recipe, model_bounds_nf, monomial_values,
                                  evaluate_relation, nf_params, psi_nf, relation_lattice_nf,
                                  select_minor_nf, wellpoised_nf)
from shortmodels.nf.order import (NumberFieldInputError, maximal_order, small_integer_report,
                                  small_integers)
from shortmodels.arith.fields import ZZ


def power_lattice(o):
    """HNF of the order's basis rows scaled to a common denominator ``den``."""
    return IL.hnf_basis(o.H, o.n), o.den


def expected_lattice(rows):
    den = 1
    for r in rows:
        for x in r:
            den = den * Fraction(x).denominator // sympy.gcd(den, Fraction(x).denominator)
    return IL.hnf_basis([[int(Fraction(x) * den) for x in r] for r in rows], len(rows)), den


@functools.lru_cache(maxsize=None)
def gaussian():
    o = small_integers(maximal_order([1, 0, 1]))
    model = build_model_nf(o, seed=0)
    cert = make_certificate_nf(o, model)
    return o, model, cert


# --- maximal orders -----------------------------------------------------------------

@pytest.mark.parametrize("f,disc,basis", [
    ([-5, 0, 1], 5, [[1, 0], [Fraction(1, 2), Fraction(1, 2)]]),
    ([1, 0, 1], -4, [[1, 0], [0, 1]]),
    ([-1, -1, 0, 1], -23, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    ([-3, 0, 1], 12, [[1, 0], [0, 1]]),
    # 10 = 1 mod 9: (1 + a + a^2) / 3 is integral
    ([-10, 0, 0, 1], -300, [[1, 0, 0], [0, 1, 0], [Fraction(1, 3)] * 3]),
    ([-2, 0, 0, 0, 1], -2048, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
])
def test_maximal_order_examples(f, disc, basis):
    o = maximal_order(f)
    assert o.disc == disc
    assert power_lattice(o) == expected_lattice(basis)


def test_cubic_with_index_two_order():
    # x^3 - x^2 - 2x - 8: disc = -4 * 503, field discriminant -503 (Dedekind's example)
    o = maximal_order([-8, -2, -1, 1])
    assert o.disc == -503


@pytest.mark.parametrize("f", fieldlists.NF_FIELDS[:20])
def test_discriminant_matches_sympy_oracle(f):
    o = maximal_order(f)
    x = sympy.Symbol("x")
    K = sympy.QQ.algebraic_field(sympy.CRootOf(sympy.Poly(list(reversed(f)), x), 0))
    assert o.disc == int(K.discriminant())


def test_order_is_a_ring_with_trace_form_discriminant():
    o = maximal_order([-5, 0, 1])
    n = o.n
    M = sympy.Matrix([[o.trace(o.mul(e(i, n), e(j, n))) for j in range(n)] for i in range(n)])
    assert M.det() == o.disc
    for i in range(n):
        for j in range(n):
            assert all(isinstance(c, int) for c in o.mul(e(i, n), e(j, n)))


def e(i, n):
    return [1 if k == i else 0 for k in range(n)]


def test_maximal_order_input_errors():
    with pytest.raises(NumberFieldInputError):
        maximal_order([-1, 0, 1])          # x^2 - 1 is reducible
    with pytest.raises(NumberFieldInputError):
        maximal_order([1, 0, 2])           # not monic
    with pytest.raises(NumberFieldInputError):
        maximal_order([-5, 0, 1], basis=[[1, 0], [0, 1]])   # Z[sqrt 5] is not 2-maximal


def test_explicit_basis_passthrough():
    o = maximal_order([-5, 0, 1], basis=[[1, 0], [Fraction(1, 2), Fraction(1, 2)]])
    assert o.disc == 5


# --- small integers ---------------------------------------------------------------

def test_small_integers_gaussian():
    o = small_integers(maximal_order([1, 0, 1]))
    rep = small_integer_report(o)
    assert rep["sup"] >= 1 and rep["sup"] <= Fraction(10001, 10000)
    assert rep["within_delta_sq"] and rep["delta_sq"] == 4


def test_small_integers_golden_ratio():
    o = small_integers(maximal_order([-5, 0, 1]))
    rep = small_integer_report(o)
    golden = (1 + 5 ** 0.5) / 2
    assert abs(float(rep["sup"]) - golden) < 1e-6
    assert rep["within_delta_sq"]


def test_small_integers_rationals():
    o = small_integers(maximal_order([0, 1]))
    sup = small_integer_report(o)["sup"]
    assert o.n == 1 and 1 <= sup <= 1 + Fraction(1, 2 ** 64)


@pytest.mark.parametrize("f", fieldlists.NF_FIELDS)
def test_small_integers_relaxed_bound(f):
    o = small_integers(maximal_order(f))
    rep = small_integer_report(o)
    assert rep["within_relaxed"]
    assert abs(o.disc) == abs(maximal_order(f).disc)


# --- parameters -------------------------------------------------------------------

def test_params_examples():
    p = nf_params(2, 5)
    assert (p.r, p.ell, p.delta_sq) == (2, 4, 5)
    # ceil(4 * sqrt 6 * 14400): the smallest H with H^2 >= 16 * 6 * 14400^2
    target = 16 * 6 * 14400 ** 2
    H = isqrt(target) + (isqrt(target) ** 2 < target)
    assert p.H == H == 141091
    assert nf_params(100, 10 ** 6).r == 6
    with pytest.raises(ValueError):
        nf_params(1, 1)


@given(st.integers(2, 6), st.integers(1, 10 ** 6))
def test_height_bound_is_the_least_integer(n, absdisc):
    p = nf_params(n, absdisc)
    ell, C = p.ell, comb(2 * p.r, p.r)
    X = n * n * p.r * (p.r + 1) * p.delta_sq
    rhs = ell ** ell * C ** n * X ** (2 * p.r * n)
    assert p.H ** (2 * n) >= rhs > (p.H - 1) ** (2 * n)
    assert p.delta_sq ** n >= absdisc ** 2 > (p.delta_sq - 1) ** n


# --- kappa, well-poisedness and relations -------------------------------------------

def test_kappas_recipes():
    o = small_integers(maximal_order([1, 0, 1]))
    p = nf_params(2, 4)
    assert build_kappas_nf(o, p, 3) == build_kappas_nf(o, p, 3)
    _, recipe = build_kappas_nf(o, p, 3)
    assert all(0 <= u <= p.u_max for row in recipe for u in row)
    kap = kappas_from_recipe(o, [[1, 0], [0, 1]])
    assert kap == [e(0, 2), e(1, 2)]
    zero = kappas_from_recipe(o, [[0, 0], [0, 0]])
    assert not wellpoised_nf(o, zero, 2)


def test_wellpoised_duplicates_depend_on_degree():
    # as in the function-field case: duplicated coordinates are ill-poised iff d < 2n - 1
    o = maximal_order([1, 0, 1])
    i = [0, 1]
    assert not wellpoised_nf(o, [i, i], 2)
    assert wellpoised_nf(o, [i, i], 3)


def gaussian_element(o, a, b):
    return [int(x) for x in o.from_power_basis([a, b])]


def test_gaussian_relations():
    o = maximal_order([1, 0, 1])
    i, one_plus_i = gaussian_element(o, 0, 1), gaussian_element(o, 1, 1)
    basis, monos = relation_lattice_nf(o, [i, one_plus_i], 2)
    assert len(basis) == comb(4, 2) - 2
    idx = {tuple(g): k for k, g in enumerate(monos)}
    v = [0] * len(monos)
    v[idx[(0, 1)]], v[idx[(1, 0)]], v[idx[(0, 0)]] = 1, -1, -1
    assert in_lattice_span(basis, v)
    basis1, monos1 = relation_lattice_nf(o, [i], 2)
    assert basis1 == [[1, 0, 1]] and monos1 == [(0,), (1,), (2,)]
    vals = monomial_values(o, [i, one_plus_i], 2)
    assert all(o.is_zero(evaluate_relation(o, vals, monos, w)) for w in basis)


def test_minor_and_psi_for_gaussian_integers():
    o = maximal_order([1, 0, 1])
    i = gaussian_element(o, 0, 1)
    E = MultiPoly(ZZ, 1, {(2,): 1, (0,): 1})
    idx, phi = select_minor_nf(o, [E], [i])
    assert idx == [0] and phi == gaussian_element(o, 0, 2)
    nphi, guard, psi = psi_nf(o, phi, [i], 2)
    assert nphi == 4 and guard == -4 and psi == -16
    c = o.from_int(3)
    assert o.norm(c) == 9


@pytest.mark.parametrize("f", [[1, 0, 1], [-5, 0, 1], [-1, -1, 0, 1]])
def test_model_pipeline(f):
    o = small_integers(maximal_order(f))
    model = build_model_nf(o, seed=0)
    assert build_model_nf(o, seed=0).equations == model.equations
    bounds = model_bounds_nf(o, model)
    for key in ("rank", "vanishing", "product", "norm_phi"):
        assert bounds[key][2], key
    assert model.psi != 0 and model.psi == model.norm_phi * model.guard
    assert all(E.total_degree() <= model.d for E in model.equations)


# --- primes, residue fields and precision --------------------------------------------

@pytest.mark.parametrize("psi,p", [(30, 7), (1, 2), (-1, 2), (2310, 13), (-2310, 13)])
def test_find_prime(psi, p):
    assert find_prime(psi) == p


def test_find_prime_zero():
    with pytest.raises(ValueError):
        find_prime(0)


@pytest.mark.parametrize("f,p,s", [([1, 0, 1], 3, 2), ([1, 0, 1], 5, 1), ([-5, 0, 1], 11, 1)])
def test_residue_split(f, p, s):
    o = maximal_order(f)
    facs = residue_split(o, p)
    assert facs[0].degree == s
    assert sum(fa.degree for fa in facs) == o.n


@pytest.mark.parametrize("G,n,p,s,m", [(10, 2, 7, 2, 2), (1, 2, 7, 2, 1), (1, 5, 2, 1, 1),
                                       (7, 1, 7, 1, 2)])
def test_precision_target(G, n, p, s, m):
    assert precision_target(G, n, p, s) == m


@given(st.integers(1, 10 ** 30), st.integers(1, 6), st.sampled_from([2, 3, 5, 101]),
       st.integers(1, 3))
def test_precision_target_is_minimal(G, n, p, s):
    m = precision_target(G, n, p, s)
    assert p ** (m * s) > G ** n and (m == 1 or p ** ((m - 1) * s) <= G ** n)


# --- certificates ------------------------------------------------------------------

def test_gaussian_certificate_and_round_trip():
    o, model, cert = gaussian()
    assert model.psi % cert.p
    assert cert.p ** (cert.m * cert.s) > model.params.G ** 2
    assert cert.p ** ((cert.m - 1) * cert.s) <= model.params.G ** 2
    rec = reconstruct_nf(cert, reference=[1, 0, 1])
    assert rec.valid and rec.verdict == "isomorphic"
    for v in model.vectors[:model.params.kept]:
        assert in_lattice_span(rec.J, v)
    assert reconstruct_nf(cert, reference=[-2, 0, 1]).verdict == "not-isomorphic"
    assert make_certificate_nf(o, model) == cert


def test_square_root_of_minus_one_over_f9():
    o = maximal_order([1, 0, 1])
    i = gaussian_element(o, 0, 1)
    from shortmodels.nf.model import NFModel
    model = build_model_nf(o, seed=0)
    # force kappa = i through a hand-made model using the minimal polynomial
    E = MultiPoly(ZZ, 1, {(2,): 1, (0,): 1})
    params = nf_params(2, 4).with_degree(2)
    toy = NFModel(params, [[0], [1]], [E], [], [], [0], [0, 2], 4, -4, -16, 0, {})
    cert = make_certificate_nf(o, toy, p=3)
    assert cert.s == 2
    R = cert.ring
    b = R.coerce(cert.b[0])
    assert R.is_zero(R.add(R.mul(b, b), R.one))
    assert model.psi


def test_toy_certificate():
    cert = NFCertificate(p=7, s=1, m=3, d=2, H=3, b=[(108,)], n=2)
    rec = reconstruct_nf(cert, [-2, 0, 1])
    assert rec.valid and rec.minpoly == [-2, 0, 1] and rec.verdict == "isomorphic"
    assert rec.J == [[2, 0, -1]]


def test_digits_round_trip():
    _, _, cert = gaussian()
    again = NFCertificate.from_digits(cert.p, cert.s, cert.m, cert.d, cert.H, cert.r,
                                      cert.digits(), cert.n)
    assert again == cert
    assert cert.payload_bits() == cert.r * cert.m * cert.s * (cert.p - 1).bit_length()


def _with_digit(cert, pos, delta):
    digits = cert.digits()
    digits[pos] = (digits[pos] + delta) % cert.p
    return NFCertificate.from_digits(cert.p, cert.s, cert.m, cert.d, cert.H, cert.r, digits,
                                     cert.n)


def test_lowest_digit_change_is_a_translation():
    # adding 1 to the constant digit of b_1 is the certificate of kappa_1 + 1, whose
    # relations are the translated ones: a genuinely valid certificate of the same field
    _, _, cert = gaussian()
    rec = reconstruct_nf(_with_digit(cert, 0, 1), reference=[1, 0, 1])
    assert rec.valid and rec.verdict == "isomorphic"


def test_corrupted_top_digit_is_rejected():
    _, _, cert = gaussian()
    top = (cert.m - 1) * cert.s
    rec = reconstruct_nf(_with_digit(cert, top, 1), reference=[1, 0, 1])
    assert rec.verdict in ("invalid", "not-isomorphic")


def test_local_lattice_of_toy_is_full_rank():
    cert = NFCertificate(p=7, s=1, m=3, d=2, H=3, b=[(108,)], n=2)
    basis, monos = relation_lattice_local(cert)
    assert len(basis) == 3 and abs(sympy.Matrix(basis).det()) == 343
