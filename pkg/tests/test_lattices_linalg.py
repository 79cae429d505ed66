"""Exact linear algebra, integer lattices, LLL and polynomial-matrix kernels."""

from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from shortmodels import _pykernels, kernels
from shortmodels.arith import poly as P
from shortmodels.arith.fields import PrimeField, RationalField, RationalFunctionField
from shortmodels.linalg import intlattice as IL
from shortmodels.linalg import lll as LLL
from shortmodels.linalg import matrix as LA
from shortmodels.linalg.polymatrix import (is_weak_popov, polymatrix_min_kernel, row_degree,
                                           vec_mat)

QQ = RationalField()


def _q(rows):
    return [[Fraction(x) for x in r] for r in rows]


# --- kernels over fields ---------------------------------------------------------------

def test_rank_kernel_small_examples():
    rk, ker = LA.rank_kernel_field(QQ, _q([[1, 1]]))
    assert rk == 1 and len(ker) == 1 and ker[0][0] == -ker[0][1]
    rk, ker = LA.rank_kernel_field(QQ, _q([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert rk == 3 and ker == []


def test_rank_kernel_over_rational_functions():
    K = PrimeField(5)
    R = RationalFunctionField(K)
    x = R.x
    M = [[x, R.one], [R.mul(x, x), x]]
    rk, ker = LA.rank_kernel_field(R, M)
    assert rk == 1 and len(ker) == 1
    v = ker[0]
    # proportional to (1, -x)
    ratio = R.div(v[1], v[0])
    assert ratio == R.neg(x)
    for row in M:
        assert R.is_zero(R.add(R.mul(row[0], v[0]), R.mul(row[1], v[1])))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 7), st.data())
def test_kernel_resubstitution_mod_p(nr, nc, data):
    F = PrimeField(11)
    M = data.draw(st.lists(st.lists(st.integers(0, 10), min_size=nc, max_size=nc),
                           min_size=nr, max_size=nr))
    rk, ker = LA.rank_kernel_field(F, M, nc)
    assert rk + len(ker) == nc
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) % 11 == 0 for row in M)
    assert rk == _gf_rank(M, 11)


def _gf_rank(M, p):
    from sympy.polys.matrices import DomainMatrix
    return DomainMatrix([[sympy.GF(p)(x) for x in r] for r in M], (len(M), len(M[0])),
                        sympy.GF(p)).rank()


# --- compiled kernels agree with the pure-Python versions ----------------------------------

@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 31, 2147483629]), st.integers(1, 8), st.integers(1, 8), st.data())
def test_compiled_kernels_match_python(p, nr, nc, data):
    M = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=nc, max_size=nc),
                           min_size=nr, max_size=nr))
    a = data.draw(st.lists(st.integers(0, p - 1), max_size=10))
    b = data.draw(st.lists(st.integers(0, p - 1), max_size=10))
    assert kernels.rref_mod_p(M, nc, p) == _pykernels.rref_mod_p(M, nc, p)
    assert kernels.rank_mod_p(M, nc, p) == _pykernels.rank_mod_p(M, nc, p)
    assert kernels.polmul_mod_p(a, b, p) == _pykernels.polmul_mod_p(a, b, p)
    assert kernels.series_mul_mod_p(a, b, 6, p) == _pykernels.series_mul_mod_p(a, b, 6, p)


def test_rank_with_dependent_row():
    import random
    rng = random.Random(3)
    for _ in range(20):
        M = [[rng.randrange(7) for _ in range(5)] for _ in range(4)]
        M[3] = [(M[0][j] + 2 * M[1][j]) % 7 for j in range(5)]
        assert LA.rank(PrimeField(7), M, 5) == _gf_rank(M, 7) <= 3


# --- integer kernels and HNF ---------------------------------------------------------

@pytest.mark.parametrize("M,expected", [
    ([[2, 3]], [[3, -2]]),
    ([[2, 4]], [[2, -1]]),
    ([[1, 1, 1], [0, 1, 2]], [[1, -2, 1]]),
])
def test_integer_kernel_examples(M, expected):
    ker = IL.integer_kernel(M)
    assert IL.hnf_basis(ker, len(M[0])) == IL.hnf_basis(expected, len(M[0]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(2, 6), st.data())
def test_integer_kernel_saturated_and_exact(nr, nc, data):
    M = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=nc, max_size=nc),
                           min_size=nr, max_size=nr))
    ker = IL.integer_kernel(M)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert len(ker) == nc - sympy.Matrix(M).rank()
    assert IL.is_saturated(ker, nc)
    if ker:
        # gcd of the maximal minors of a saturated basis is 1
        K = sympy.Matrix(ker)
        from itertools import combinations
        from math import gcd
        g = 0
        for cols in combinations(range(nc), len(ker)):
            g = gcd(g, int(K.extract(list(range(len(ker))), list(cols)).det()))
        assert g == 1


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_hnf_is_unimodular_and_canonical(nr, nc, data):
    rows = data.draw(st.lists(st.lists(st.integers(-20, 20), min_size=nc, max_size=nc),
                              min_size=nr, max_size=nr))
    H, U, piv = IL.hnf(rows, nc)
    assert abs(sympy.Matrix(U).det()) == 1
    assert sympy.Matrix(U) * sympy.Matrix(rows) == sympy.Matrix(H)
    for k, c in enumerate(piv):
        assert H[k][c] > 0
        for i in range(k):
            assert 0 <= H[i][c] < H[k][c]
    # the nonzero rows span the same lattice as a permuted generating set
    assert IL.hnf_basis(list(reversed(rows)), nc) == IL.hnf_basis(rows, nc)


# --- LLL -------------------------------------------------------------------------------

def test_lll_examples():
    assert LLL.lll_reduce([[1, 0], [4, 1]]) == [[1, 0], [0, 1]]
    assert LLL.lll_reduce([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    red = LLL.lll_reduce([[201, 0], [200, 1]])
    assert [-1, 1] in red or [1, -1] in red


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_lll_property(n, data):
    B = data.draw(st.lists(st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1),
                           min_size=n, max_size=n))
    assume(sympy.Matrix(B).rank() == n)
    red, U = LLL.lll_reduce(B, return_transform=True)
    assert LLL.is_lll_reduced(red, LLL.DEFAULT_DELTA)
    assert abs(sympy.Matrix(U).det()) == 1
    assert sympy.Matrix(U) * sympy.Matrix(B) == sympy.Matrix(red)


def test_lll_first_vector_within_guarantee():
    import itertools
    B = [[1, 0, 0, 1234], [0, 1, 0, 4321], [0, 0, 1, 1111], [0, 0, 0, 10007]]
    red = LLL.lll_reduce(B)
    # shortest among all small combinations of the reduced basis (an upper
    # bound on the first minimum)
    lam1 = min(sum(x * x for x in [sum(c * v[j] for c, v in zip(cs, red)) for j in range(4)])
               for cs in itertools.product(range(-3, 4), repeat=4) if any(cs))
    assert sum(x * x for x in red[0]) <= 2 ** 3 * lam1


def test_float_gram_lll_examples():
    U = LLL.float_gram_lll([[mpmath.mpf(1), 0], [0, mpmath.mpf(1)]], 64)
    assert U == [[1, 0], [0, 1]]
    U = LLL.float_gram_lll([[2, 1], [1, 1]], 64)
    G = sympy.Matrix([[2, 1], [1, 1]])
    T = sympy.Matrix(U) * G * sympy.Matrix(U).T
    assert abs(sympy.Matrix(U).det()) == 1
    assert T[0, 0] <= G[0, 0] and T[1, 1] <= G[0, 0]
    assert T == sympy.eye(2)
    U = LLL.float_gram_lll([[2, 0], [0, 2]], 64)
    assert U == [[1, 0], [0, 1]]


# --- polynomial matrices ------------------------------------------------------------

def _check_kernel(K, M, basis):
    for row in basis:
        assert all(not c for c in vec_mat(K, row, M))


def test_min_kernel_linear_map():
    K = PrimeField(3)
    M = [[(0, 1)], [(1,)]]                # (a, b) -> a x + b
    basis, profile = polymatrix_min_kernel(K, M, 2)
    assert profile == [1] and len(basis) == 1
    row = basis[0]
    lc = row[0][-1]
    assert [P.scale(K, K.inv(lc), c) for c in row] == [(1,), (0, 2)]
    _check_kernel(K, M, basis)


def test_min_kernel_quadratic_map():
    K = PrimeField(5)
    M = [[(1, 0, 1)], [(0, 1)]]           # (a, b) -> a (x^2 + 1) + b x
    basis, profile = polymatrix_min_kernel(K, M, 2)
    assert profile == [2]
    row = basis[0]
    lc = row[0][-1]
    assert [P.scale(K, K.inv(lc), c) for c in row] == [(0, 1), (4, 0, 4)]
    _check_kernel(K, M, basis)


def test_min_kernel_zero_map():
    K = PrimeField(7)
    basis, profile = polymatrix_min_kernel(K, [[()], [()]], 2)
    assert profile == [0, 0] and len(basis) == 2
    basis, profile = polymatrix_min_kernel(K, [], 2)
    assert profile == [0, 0]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.data())
def test_min_kernel_properties(nrows, data):
    K = PrimeField(5)
    poly = st.lists(st.integers(0, 4), max_size=3).map(lambda v: P.normalize(K, v))
    M = data.draw(st.lists(st.lists(poly, min_size=1, max_size=1),
                           min_size=nrows, max_size=nrows))
    basis, profile = polymatrix_min_kernel(K, M, nrows)
    _check_kernel(K, M, basis)
    assert profile == sorted(profile) == [row_degree(r) for r in basis]
    assert is_weak_popov(basis)
    nonzero = [row[0] for row in M if row[0]]
    if not nonzero:
        assert len(basis) == nrows
        return
    assert len(basis) == nrows - 1
    # the kernel of a column (f_1..f_k) has degree sum = max deg f_i - deg gcd
    g = nonzero[0]
    for f in nonzero[1:]:
        g = P.gcd(K, g, f)
    assert sum(profile) == max(P.degree(f) for f in nonzero) - P.degree(g)
