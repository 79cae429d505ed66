"""Function fields: integral bases, Maroni reduction, models and certificates."""

import functools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import fieldlists
from shortmodels.arith import poly as P
from shortmodels.arith.fields import PrimeField, make_extension
from shortmodels.arith.multipoly import MultiPoly
from shortmodels.ff.certificate import (FFCertificate, exact_relation_space, make_certificate_ff,
                                        precision_for, reconstruct_ff, series_relation_space)
from shortmodels.ff.model import (NoMinorError, build_kappas, build_model, evaluate_at_kappas,
                                  ff_params, find_coprime_irreducible, kappas_from_recipe,
                                  model_bounds, psi_norm_ff, relations_ff, select_minor_ff,
                                  wellpoised_check)
from shortmodels.ff.order import (CurveInput, CurveInputError, GenusMismatchError,
                                  integral_basis, maroni_reduce, table_degree_violations)


def superelliptic(q, n, f, genus=None):
    K = make_extension(q) if q in (2, 3, 5, 7, 11, 13) else make_extension(*q)
    return CurveInput(K, "superelliptic", n, f=tuple(f), genus=genus)


@functools.lru_cache(maxsize=None)
def g2_q7():
    """y^2 = x^5 + 1 over F_7 (genus 2) with its model and certificate."""
    o = maroni_reduce(integral_basis(superelliptic(7, 2, (1, 0, 0, 0, 0, 1))))
    model = build_model(o, seed=1)
    F = find_coprime_irreducible(model.psi, o.K)
    cert = make_certificate_ff(o, model, F, seed=1)
    return o, model, F, cert


# --- integral bases and Maroni invariants ------------------------------------------------

@pytest.mark.parametrize("q,n,f,genus,a", [
    (7, 2, (1, 0, 0, 0, 0, 1), 2, [0, 3]),
    (5, 2, (1, 1, 0, 0, 0, 0, 1), 2, [0, 3]),
    (7, 3, (1, 2, 0, 0, 1), 3, [0, 2, 3]),
])
def test_reduced_bases(q, n, f, genus, a):
    o0 = integral_basis(superelliptic(q, n, f))
    assert o0.genus == genus
    o = maroni_reduce(o0)
    assert o.a == a and sum(o.a) == n + genus - 1
    assert table_degree_violations(o) == []
    assert o.table[0][0] == o.basis_vector(0)


def test_maroni_reduce_is_idempotent():
    o = maroni_reduce(integral_basis(superelliptic(7, 3, (1, 2, 0, 0, 1))))
    o2 = maroni_reduce(o)
    assert o2.a == o.a


def test_curve_input_errors():
    with pytest.raises(CurveInputError):
        integral_basis(superelliptic(7, 2, (0, 0, 1, 1)))          # x^2 (x + 1): not squarefree
    with pytest.raises(CurveInputError):
        integral_basis(superelliptic(7, 7, (1, 0, 0, 1)))          # characteristic divides n
    with pytest.raises(GenusMismatchError):
        integral_basis(superelliptic(7, 2, (1, 0, 0, 0, 0, 1), genus=3))
    with pytest.raises(CurveInputError):
        integral_basis(CurveInput(make_extension(7), "plane", 2))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.sampled_from([2, 3]), st.integers(4, 8),
       st.integers(0, 10 ** 6))
def test_maroni_invariants_property(q, n, deg, seed):
    K = make_extension(q)
    f = fieldlists.random_squarefree(K, deg, random.Random(seed))
    o = maroni_reduce(integral_basis(CurveInput(K, "superelliptic", n, f=f)))
    if o.genus < 2:
        return
    assert o.a[0] == 0 and o.a == sorted(o.a)
    assert sum(o.a) == n + o.genus - 1
    assert Fraction(o.a[-1]) <= 2 * (1 + Fraction(o.genus - 1, n))
    assert table_degree_violations(o) == []


# --- parameters --------------------------------------------------------------------

def test_params_examples():
    p = ff_params(2, 2, 7)
    assert (p.r, p.h, p.nu, p.d_x, p.d_y, p.rho) == (2, 1, 3, 8, 2, 16)
    p = ff_params(5, 6, 2)
    assert (p.r, p.h, p.nu, p.d_x, p.rho) == (3, 5, 4, 27, 54)


def test_params_large_n_by_definition():
    # r: C(12,6) = 924 >= 700 while C(10,5) = 252 < 600; h: 101 <= 4200 < 101^2;
    # nu = 2 + ceil(198/100) = 4; d_x = r (h + nu) = 30
    p = ff_params(100, 100, 101)
    assert (p.r, p.h, p.nu, p.d_x, p.rho) == (6, 1, 4, 30, 60)


@given(st.integers(2, 60), st.integers(2, 80), st.sampled_from([2, 3, 4, 5, 7, 9, 101]))
def test_params_minimality(n, g, q):
    from math import comb
    p = ff_params(n, g, q)
    assert comb(2 * p.r, p.r) >= n * (p.r + 1)
    assert p.r == 1 or comb(2 * p.r - 2, p.r - 1) < n * p.r
    assert q ** (p.h + 1) > n * p.r * (p.r + 1)
    assert p.h == 0 or q ** p.h <= n * p.r * (p.r + 1)
    assert p.rho == 2 * p.d_x


# --- kappa, well-poisedness and relations ---------------------------------------------

def test_kappa_recipes():
    o, model, _, _ = g2_q7()
    params = model.params
    k1, r1 = build_kappas(o, params, seed=5)
    k2, r2 = build_kappas(o, params, seed=5)
    assert (k1, r1) == (k2, r2)
    K = o.K
    identity = [[(K.one,) if i == j + 1 else () for j in range(params.r)] for i in range(o.n)]
    kap = kappas_from_recipe(o, [row for row in identity])
    assert kap[0] == o.basis_vector(1)
    zero = [[() for _ in range(params.r)] for _ in range(o.n)]
    assert not wellpoised_check(o, kappas_from_recipe(o, zero), 3)


def test_wellpoised_duplicates_depend_on_degree():
    # With u = y_1, v = y_2 - y_1 the jet image of (k, k) is
    # {(g(k), g'(k)) : deg g <= d} + {h(k) : deg h <= d - 1}, of rank min(d + 1, 2n) + n,
    # so duplicated coordinates are ill-poised exactly when d < 2n - 1.
    o, model, _, _ = g2_q7()
    kap = model.kappas(o)
    assert wellpoised_check(o, kap, model.d)
    assert not wellpoised_check(o, [kap[0], kap[0]], 2)
    assert wellpoised_check(o, [kap[0], kap[0]], 3)


def test_relation_between_w1_and_x_w1():
    o, _, _, _ = g2_q7()
    K = o.K
    w1 = o.basis_vector(1)
    kap = [w1, o.scale((K.zero, K.one), w1)]
    eqs, profile = relations_ff(o, kap, 2)
    target = MultiPoly(K, 3, {(0, 0, 1): K.one, (1, 1, 0): K.neg(K.one)})
    assert o.is_zero(evaluate_at_kappas(o, target, kap))
    # the relation has x-degree 1 and lies in the K[x]-span: the minimal one has e = 1
    assert profile[0] == 1
    assert all(o.is_zero(evaluate_at_kappas(o, E, kap)) for E in eqs)


def test_hyperelliptic_defining_relation():
    o, _, _, _ = g2_q7()
    K = o.K
    kap = [o.basis_vector(1)]
    eqs, profile = relations_ff(o, kap, 2)
    assert len(eqs) == 1 and profile == [5]
    E = eqs[0]
    c = E.terms[(0, 2)]
    assert {e: K.div(v, c) for e, v in E.terms.items()} == {
        (0, 2): K.one, (0, 0): K.neg(K.one), (5, 0): K.neg(K.one)}


def test_minor_and_norm_for_single_equation():
    o, _, _, _ = g2_q7()
    K = o.K
    kap = [o.basis_vector(1)]
    E = MultiPoly(K, 2, {(0, 2): K.one, (5, 0): K.neg(K.one), (0, 0): K.neg(K.one)})
    idx, phi = select_minor_ff(o, [E], kap)
    assert idx == [0] and phi == o.scale((K.from_int(2),), o.basis_vector(1))
    f = (1, 0, 0, 0, 0, 1)
    assert psi_norm_ff(o, phi, guard=False) == P.scale(K, K.from_int(-4), f)
    c = o.scale((K.from_int(3),), o.one())
    assert psi_norm_ff(o, c, guard=False) == (K.from_int(9),)


def test_minor_vanishes_in_characteristic_two():
    K = PrimeField(2)
    one, zero = (1,), ()
    x5 = (0, 0, 0, 0, 0, 1)
    table = [[[one, zero], [zero, one]], [[zero, one], [x5, one]]]   # y^2 + y = x^5
    o = integral_basis(CurveInput(K, "explicit", 2, table=table, genus=2))
    kap = [o.scale((0, 1), o.one())]                                  # kappa = x
    E = MultiPoly(K, 2, {(0, 2): 1, (2, 0): 1})                      # y^2 - x^2
    assert o.is_zero(evaluate_at_kappas(o, E, kap))
    with pytest.raises(NoMinorError):
        select_minor_ff(o, [E], kap)


@pytest.mark.parametrize("q,psi,expected", [
    (2, (0, 1, 1), (1, 1, 1)),
    (3, (0, 1), (1, 1)),
    (2, (0, 0, 0, 1, 1), (1, 1, 0, 1)),
])
def test_find_coprime_irreducible(q, psi, expected):
    K = PrimeField(q)
    if q == 2 and len(psi) == 5:
        psi = P.mul(K, P.mul(K, (0, 1), (1, 1)), (1, 1, 1))
    F = find_coprime_irreducible(psi, K)
    assert tuple(F) == expected
    assert P.is_irreducible(K, F) and P.degree(P.gcd(K, F, psi)) == 0


# --- the pipeline -------------------------------------------------------------------

def test_pipeline_model_bounds_and_determinism():
    o, model, F, cert = g2_q7()
    assert all(v[2] for v in model_bounds(o, model).values())
    again = build_model(o, seed=1)
    assert again.equations == model.equations and again.minor == model.minor
    assert again.recipe == model.recipe
    assert all(v <= 10 for v in model.attempts.values())
    for E in model.all_equations:
        assert o.is_zero(evaluate_at_kappas(o, E, model.kappas(o)))
        assert E.bidegree()[1] <= model.d


def test_precision_rule():
    assert precision_for(2, 16, 1, 2) == 17
    _, model, _, cert = g2_q7()
    nrho = cert.n * cert.rho
    assert cert.m * cert.l * cert.s > nrho >= (cert.m - 1) * cert.l * cert.s


def test_round_trip_equals_exact_relation_space():
    o, model, F, cert = g2_q7()
    rec = reconstruct_ff(cert)
    assert rec.valid and len(rec.witness) == cert.r
    exact = exact_relation_space(o, model.kappas(o), model.d_x, model.d_y)
    assert rec.relations == exact


def test_more_precision_gives_the_same_relations():
    o, model, F, cert = g2_q7()
    rec = reconstruct_ff(cert)
    longer = FFCertificate(cert.K, cert.F, cert.s, 2 * cert.m, cert.d_x, cert.d_y,
                           [tuple(v) for v in rec.lifted], cert.n, cert.rho)
    assert series_relation_space(longer)[0] == rec.relations


def test_corrupted_digit_is_detected():
    o, model, F, cert = g2_q7()
    exact = exact_relation_space(o, model.kappas(o), model.d_x, model.d_y)
    S = cert.S
    rng = random.Random(4)
    detected = 0
    for _ in range(10):
        j = rng.randrange(cert.r)
        k = rng.randrange(cert.m)
        b = [list(v) for v in cert.b]
        b[j][k] = S.add(b[j][k], S.one)
        bad = FFCertificate(cert.K, cert.F, cert.s, cert.m, cert.d_x, cert.d_y,
                            [tuple(v) for v in b], cert.n, cert.rho)
        rec = reconstruct_ff(bad)
        if not rec.valid or rec.relations != exact:
            detected += 1
    assert detected == 10
