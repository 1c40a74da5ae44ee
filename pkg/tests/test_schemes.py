import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxrank.exact import jet_space, nullspace, rank
from maxrank.schemes import (Cusp, HmesComponent, Placement, SimplePoint, Tacnode,
                             TwoCurvilinear, assemble_and_rank, component_rows, contact_order,
                             expected_dimension, hmes_rows, initial_ideal_neglex,
                             sample_placement, verify_general)
from maxrank.staircase import Staircase

P = 2**31 - 1
ORIGIN = ((1, 0), (0, 1))


def at_origin(c, germ=()):
    J = contact_order(c) + 2
    g = tuple(germ) + (0,) * (J - len(germ))
    return Placement(0, 0, ORIGIN, g)


def test_component_invariants():
    assert (Tacnode(1).N, Tacnode(1).ell) == (3, 2)
    assert (Tacnode(3).N, Tacnode(3).ell) == (9, 6)
    assert (Cusp(2).N, Cusp(2).ell) == (5, 3)
    assert (Cusp(4).N, Cusp(4).ell) == (11, 7)
    assert Cusp(2).staircase == Staircase((3, 2))
    assert Tacnode(2).staircase == Staircase((4, 2))
    assert str(Tacnode(2)) == "A3" and str(Cusp(3)) == "A4" and str(SimplePoint()) == "P"
    assert (TwoCurvilinear(10, 7).N, TwoCurvilinear(10, 7).ell) == (10, 7)
    with pytest.raises(ValueError):
        Cusp(1)
    with pytest.raises(ValueError):
        HmesComponent(3, Staircase((17, 6)), 5)


def test_node_rows_kill_the_linear_part():
    rows = component_rows(Tacnode(1), at_origin(Tacnode(1)), 2, P)
    sp = jet_space(2, 3, P)
    K = nullspace(rows, P)
    assert rows.shape[0] == 3 and K.shape[0] == 3
    # kernel = quadrics
    assert all(sp.degs[np.nonzero(v)[0]].min() == 2 for v in K)


def test_cusp_at_origin_leaves_only_y_squared():
    rows = component_rows(Cusp(2), at_origin(Cusp(2)), 2, P)
    assert rows.shape[0] == 5 and rank(rows, P) == 5
    sp = jet_space(2, 3, P)
    K = nullspace(rows, P)
    assert K.shape[0] == 1
    assert list(np.nonzero(K[0])[0]) == [sp.index((0, 2))]


def test_cusp_with_curved_germ():
    # germ v = u^2: the cusp ideal becomes ((y-x^2)^2, (y-x^2) x^2, x^3)
    rows = component_rows(Cusp(2), at_origin(Cusp(2), (0, 1)), 3, P)
    sp = jet_space(2, 4, P)
    x, y = sp.gens()
    for F in [(y - x ** 2) ** 2, (y - x ** 2) * x ** 2, x ** 3, x ** 3 * y]:
        assert not (rows @ F.coeffs % P).any()
    assert rank(rows, P) == 5


def test_random_tacnode_rank():
    rng = np.random.default_rng(5)
    rows = component_rows(Tacnode(2), sample_placement(Tacnode(2), rng, P), 3, P)
    assert rows.shape[0] == 6 and rank(rows, P) == 6


def test_hmes_row_counts():
    rng = np.random.default_rng(1)
    cases = [(HmesComponent(2, Staircase((2, 1)), 1), 3, 6),
             (HmesComponent(10, Staircase((17, 6)), 5), 11, 78),
             (HmesComponent(0, Staircase((1,)), 1), 1, 1)]
    for h, d, n in cases:
        rows = hmes_rows(h, sample_placement(h, rng, P), d, P)
        assert rows.shape[0] == n == h.N
        assert rank(rows, P) == n


def test_simple_point_and_curvilinear_rows():
    rng = np.random.default_rng(2)
    assert rank(component_rows(SimplePoint(), sample_placement(SimplePoint(), rng, P), 2, P), P) == 1
    c = TwoCurvilinear(10, 7)
    assert rank(component_rows(c, sample_placement(c, rng, P), 6, P), P) == 10


def test_expected_dimension():
    assert expected_dimension(2, [Tacnode(1)] * 2) == -1
    assert expected_dimension(4, [Tacnode(1)] * 3 + [Cusp(2)]) == 0
    assert expected_dimension(1, []) == 2


def test_two_nodes_in_degree_two():
    rep = assemble_and_rank([Tacnode(1)] * 2, 2, P, 0)
    assert (rep.rank, rep.expected, rep.deficiency) == (5, 6, 1)
    assert rep.dimension == 0


def test_eleven_cusps_in_degree_nine():
    rep = assemble_and_rank([Cusp(2)] * 11, 9, P, 0)
    assert rep.rank == rep.expected == 55 and rep.maximal


def test_five_nodes_in_degree_four():
    v = verify_general([Tacnode(1)] * 5, 4, trials=5)
    assert not v.certified and v.min_deficiency >= 1


def test_verdicts():
    assert verify_general([Tacnode(1)], 2, trials=1).certified
    v = verify_general([Cusp(2)] * 2, 3, trials=10)
    assert str(v) == "ProbablyDeficient(1)" and len(v.reports) == 10
    parts = [Cusp(2)] * 14 + [Cusp(3)]
    assert sum(c.N for c in parts) == 78 and sum(c.ell for c in parts) == 47
    v = verify_general(parts, 11, trials=5)
    assert v.certified and v.kind == "CertifiedMaximal"


def test_small_prime_is_rejected():
    with pytest.raises(ValueError):
        assemble_and_rank([Cusp(4)], 3, prime=7)


def test_seeds_reproduce():
    a = assemble_and_rank([Cusp(2), Tacnode(2)], 4, P, 11)
    b = assemble_and_rank([Cusp(2), Tacnode(2)], 4, P, 11)
    assert a == b


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_single_singularities_impose_independent_conditions(k, seed):
    # one A_k scheme in a degree large enough to separate it
    for c in (Tacnode(k), Cusp(k + 1)):
        d = contact_order(c) + 1
        rep = assemble_and_rank([c], d, P, seed)
        assert rep.rank == c.N


def test_initial_ideals():
    sp = jet_space(2, 10, P)
    x, y = sp.gens()
    assert initial_ideal_neglex([y ** 2, y * x ** 2, x ** 3], 8) == Staircase((3, 2))
    f = y - x ** 2
    assert initial_ideal_neglex([f ** 2, f * x ** 2, x ** 4], 8) == Staircase((4, 2))
    assert initial_ideal_neglex([x, y], 8) == Staircase((1,))
    assert initial_ideal_neglex([y - x ** 2 - x ** 3, x ** 5], 8) == Staircase((5,))


def test_initial_ideal_of_a_curvilinear_germ_matches_contact():
    # y = phi(x) with contact ell: stairs (ell,)
    sp = jet_space(2, 12, P)
    x, y = sp.gens()
    for ell in range(1, 7):
        assert initial_ideal_neglex([y - x ** 2 - 3 * x ** 4, x ** ell], 10) == Staircase((ell,))
