import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from maxrank.exact import (DEFAULT_PRIME, OrderBudgetError, Subspace, check_prime, colon,
                           ideal_span, inv, is_prime, jet_compose, jet_partial, jet_space,
                           left_nullspace, matmul, multiplication_matrix, nullspace, rank,
                           reduce_rows, rref, set_var_zero)
from maxrank.exact.field import binomial_table

P = DEFAULT_PRIME
SMALL = 101


def test_primes():
    assert is_prime(P) and is_prime(101) and not is_prime(1) and not is_prime(2**31 + 1)
    assert check_prime(101, 50) == 101
    for bad, bound in [(100, 0), (101, 101), (2**61 - 1, 0)]:
        with pytest.raises(ValueError):
            check_prime(bad, bound)
    assert inv(3, 7) == 5
    with pytest.raises(ZeroDivisionError):
        inv(14, 7)


def test_binomial_table():
    from math import comb
    t = binomial_table(12, P)
    assert all(t[n, k] == comb(n, k) for n in range(13) for k in range(n + 1))


def test_rank_small_cases():
    assert rank(np.eye(3, dtype=np.int64), P) == 3
    assert rank(np.zeros((4, 7), dtype=np.int64), P) == 0
    assert rank(np.zeros((0, 5), dtype=np.int64), P) == 0


def test_two_double_points_on_conics():
    # columns 1, x, y, x^2, xy, y^2; value and both partials at (0,0) and (1,0)
    A = np.array([[1, 0, 0, 0, 0, 0],
                  [0, 1, 0, 0, 0, 0],
                  [0, 0, 1, 0, 0, 0],
                  [1, 1, 0, 1, 0, 0],
                  [0, 1, 0, 2, 0, 0],
                  [0, 0, 1, 0, 1, 0]])
    assert rank(A, P) == 5
    K = nullspace(A, P)
    assert K.shape[0] == 1 and np.count_nonzero(K[0]) == 1 and K[0, 5] != 0


def test_rref_pivots_and_reduction():
    A = np.array([[2, 4, 6], [1, 2, 4], [0, 0, 5]])
    R, piv = rref(A, SMALL)
    assert list(piv) == [0, 2]
    assert R.shape == (2, 3)
    nf = reduce_rows(np.array([[3, 6, 1]]), R, piv, SMALL)
    assert not nf.any()


def test_mod_arithmetic_near_the_top():
    big = np.full((3, 3), P - 1, dtype=np.int64)
    assert (matmul(big, big, P) == 3 % P).all()


mats = st.tuples(st.integers(1, 7), st.integers(1, 7)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(0, SMALL - 1)))


@settings(max_examples=60, deadline=None)
@given(mats)
def test_rank_is_transpose_invariant(A):
    assert rank(A, SMALL) == rank(A.T.copy(), SMALL)


@settings(max_examples=60, deadline=None)
@given(mats, st.randoms(use_true_random=False))
def test_rank_ignores_row_and_column_order(A, rnd):
    rows = list(range(A.shape[0]))
    cols = list(range(A.shape[1]))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    assert rank(A[rows][:, cols], SMALL) == rank(A, SMALL)


@settings(max_examples=60, deadline=None)
@given(mats)
def test_nullspaces(A):
    K = nullspace(A, SMALL)
    assert K.shape[0] == A.shape[1] - rank(A, SMALL)
    assert not matmul(A, K.T, SMALL).any() if K.size else True
    L = left_nullspace(A, SMALL)
    assert L.shape[0] == A.shape[0] - rank(A, SMALL)
    assert not matmul(L, A, SMALL).any() if L.size else True


def test_jet_products_truncate():
    sp = jet_space(1, 2, P)
    (x,) = sp.gens()
    assert (1 + x) * (1 - x) == sp.const(1)


def test_compose_cusp_parametrization():
    sp = jet_space(2, 8, P)
    x, y = sp.gens()
    line = jet_space(1, 8, P)
    (t,) = line.gens()
    assert jet_compose(y ** 2 - x ** 3, [t ** 2, t ** 3]).is_zero()


def test_compose_substitution_of_a_power():
    s = 4
    sp = jet_space(2, s + 2, P)
    x, y = sp.gens()
    assert jet_compose(y, [x, -(x ** s)]) == -(x ** s)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_compose_is_a_ring_homomorphism(seed):
    rng = np.random.default_rng(seed)
    sp = jet_space(2, 6, P)
    F, G = sp.random(rng), sp.random(rng)
    subs = [sp.random(rng, min_order=1), sp.random(rng, min_order=1)]
    assert jet_compose(F * G, subs) == jet_compose(F, subs) * jet_compose(G, subs)
    assert jet_compose(F + G, subs) == jet_compose(F, subs) + jet_compose(G, subs)


def test_partials():
    sp = jet_space(2, 6, P)
    x, y = sp.gens()
    assert jet_partial(x ** 3 * y + y ** 2, 0) == 3 * x ** 2 * y
    assert jet_partial(x ** 3 * y + y ** 2, 1) == x ** 3 + 2 * y


def test_multiplication_matrix_matches_products():
    rng = np.random.default_rng(3)
    sp = jet_space(2, 5, P)
    g, h = sp.random(rng), sp.random(rng)
    assert (matmul(h.coeffs.reshape(1, -1), multiplication_matrix(g), P)[0] == (g * h).coeffs).all()


def test_ideal_span_small():
    sp = jet_space(2, 3, P)
    x, y = sp.gens()
    S = ideal_span([x ** 2, y])
    assert S.dim == 4 and S.contains(x * y) and S.contains(y ** 2) and not S.contains(x)
    assert ideal_span([sp.const(1)]).dim == sp.dim


def test_colon_and_quotients():
    sp = jet_space(2, 8, P)
    x, y = sp.gens()
    assert colon(ideal_span([x ** 2]), x, 7) == ideal_span([x]).truncate(7)
    with pytest.raises(OrderBudgetError):
        colon(ideal_span([x ** 2]), x ** 3, 7)
    # (x^3, x y, y^2) has colength 4
    assert ideal_span([x ** 3, x * y, y ** 2]).quotient_dim() == 4


def test_ie_colength_for_31_is_stable():
    for M in (6, 7, 9):
        sp = jet_space(2, M, P)
        x, y = sp.gens()
        f = x + y
        assert ideal_span([x ** 3, x * f, f ** 2]).quotient_dim() == 4


def test_set_var_zero_on_a_shifted_product():
    sp = jet_space(3, 5, P)
    x, y, t = sp.gens()
    S = ideal_span([(x + y + t) * x])
    flat = jet_space(2, 5, P)
    X, Y = flat.gens()
    assert set_var_zero(S, 2) == ideal_span([(X + Y) * X])


def test_subspace_algebra():
    sp = jet_space(2, 5, P)
    x, y = sp.gens()
    A, B = ideal_span([x]), ideal_span([y])
    inter = A.intersect(B)
    assert inter == ideal_span([x * y])
    assert inter.issubset(A) and not A.issubset(B)
    assert Subspace.zero(sp).dim == 0 and Subspace.full(sp).quotient_dim() == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_quotient_dim_stabilizes(seed):
    # a monomial ideal with random corners: colength visible once past the corners
    rng = np.random.default_rng(seed)
    a, b = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    dims = []
    for M in (a + b + 1, a + b + 3):
        sp = jet_space(2, M, P)
        x, y = sp.gens()
        dims.append(ideal_span([x ** a, y ** b]).quotient_dim())
    assert dims[0] == dims[1] == a * b
