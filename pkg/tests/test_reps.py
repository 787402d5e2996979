import random
from fractions import Fraction

import pytest

from foldkit.quiver import QuiverError, parse_quiver
from foldkit.reps import (
    QuiverRep,
    a_on_rep,
    act_group,
    brute_force_nilpotent,
    epsilon_i,
    framed_form,
    in_lambda,
    in_lambda_vw,
    is_nilpotent,
    moment_map,
    parse_rep,
    property_suite,
    random_invertible,
    random_rep,
    symplectic_form,
)

from conftest import A3_FLIP, CYCLE4_REFLECTION


@pytest.fixture
def edge_quiver():
    return parse_quiver("vertex 1 2\nedge e1 1 2\n")


def scalar_rep(g, x, y):
    return QuiverRep(g, (1, 1), {0: [[Fraction(x)]], 1: [[Fraction(y)]]})


def test_symplectic_two_term_formula(edge_quiver):
    g = edge_quiver.graph
    b = scalar_rep(g, 2, 3)
    bp = scalar_rep(g, 5, 7)
    assert symplectic_form(edge_quiver, b, bp) == 3 * 5 - 2 * 7
    assert symplectic_form(edge_quiver, b, b) == 0
    assert symplectic_form(edge_quiver, b, bp) == -symplectic_form(edge_quiver, bp, b)


def test_symplectic_shape_mismatch(edge_quiver):
    g = edge_quiver.graph
    b = scalar_rep(g, 1, 1)
    other = QuiverRep(g, (1, 2))
    with pytest.raises(QuiverError):
        symplectic_form(edge_quiver, b, other)


def test_moment_map_scalars(edge_quiver):
    b = scalar_rep(edge_quiver.graph, 2, 3)
    mu = moment_map(edge_quiver, b)
    assert mu[0] == [[Fraction(6)]]
    assert mu[1] == [[Fraction(-6)]]


def test_moment_map_zero_rep(edge_quiver):
    b = QuiverRep(edge_quiver.graph, (2, 3))
    assert all(all(x == 0 for row in m for x in row) for m in moment_map(edge_quiver, b))


def test_nilpotency_examples(edge_quiver):
    g = edge_quiver.graph
    assert is_nilpotent(g, QuiverRep(g, (1, 1)))
    assert is_nilpotent(g, scalar_rep(g, 1, 0))
    assert not is_nilpotent(g, scalar_rep(g, 1, 1))


def test_cycle_with_invertible_maps_is_not_nilpotent():
    q = parse_quiver("vertex 1 2 3 4\nedge e1 1 2\nedge e2 2 3\nedge e3 3 4\nedge e4 4 1\n")
    one = [[Fraction(1)]]
    b = QuiverRep(q.graph, (1, 1, 1, 1), {0: one, 2: one, 4: one, 6: one})
    assert not is_nilpotent(q.graph, b)
    assert not brute_force_nilpotent(q.graph, b, 9)


def test_membership_examples(edge_quiver):
    g = edge_quiver.graph
    assert in_lambda(edge_quiver, QuiverRep(g, (1, 1)))
    assert in_lambda(edge_quiver, scalar_rep(g, 1, 0))
    assert not in_lambda(edge_quiver, scalar_rep(g, 1, 1))


def test_epsilon_examples(edge_quiver):
    g = edge_quiver.graph
    zero = QuiverRep(g, (2, 2))
    assert epsilon_i(g, zero, 0) == 2
    b = QuiverRep(g, (1, 2), {0: [[Fraction(1)], [Fraction(2)]]})
    assert epsilon_i(g, b, 1) == 1
    surj = QuiverRep(g, (1, 1), {0: [[Fraction(1)]], 1: [[Fraction(1)]]})
    assert epsilon_i(g, surj, 1) == 0


def test_a_on_rep_is_group_action(a3_flip):
    g = a3_flip.graph
    a = a3_flip.automorphism
    rng = random.Random(5)
    b = random_rep(g, (2, 1, 2), rng)
    ab = a_on_rep(g, a, b)
    aab = a_on_rep(g, a, ab)
    assert aab.dims == b.dims
    assert all(aab.B[h] == b.B[h] for h in g.halves())


def test_a_on_rep_moment_equivariance(a3_flip):
    g = a3_flip.graph
    a = a3_flip.automorphism
    rng = random.Random(7)
    for _ in range(20):
        b = random_rep(g, (2, 1, 2), rng)
        mu = moment_map(a3_flip, b)
        amu = moment_map(a3_flip, a_on_rep(g, a, b))
        for i in range(3):
            assert amu[i] == mu[a.vperm[i]]
        assert is_nilpotent(g, a_on_rep(g, a, b)) == is_nilpotent(g, b)
        for i in range(3):
            assert epsilon_i(g, a_on_rep(g, a, b), i) == epsilon_i(g, b, a.vperm[i])


def test_group_equivariance_random(edge_quiver):
    g = edge_quiver.graph
    rng = random.Random(11)
    for _ in range(25):
        b = random_rep(g, (2, 2), rng)
        blocks = [random_invertible(rng, 2), random_invertible(rng, 2)]
        gb = act_group(g, b, blocks)
        assert is_nilpotent(g, gb) == is_nilpotent(g, b)
        for i in range(2):
            assert epsilon_i(g, gb, i) == epsilon_i(g, b, i)


def test_nilpotency_bound_matches_brute_force(edge_quiver):
    g = edge_quiver.graph
    rng = random.Random(13)
    for _ in range(60):
        dims = (rng.randint(0, 3), rng.randint(0, 3))
        b = random_rep(g, dims, rng)
        if rng.random() < 0.5:
            b.B[1] = [[Fraction(0)] * len(r) for r in b.B[1]]
        assert is_nilpotent(g, b) == brute_force_nilpotent(g, b, 2 * sum(dims) + 1)


def test_framed_membership(edge_quiver):
    g = edge_quiver.graph
    zero = QuiverRep(g, (1, 1), None, (1, 1))
    assert in_lambda_vw(edge_quiver, zero)
    with_j = QuiverRep(g, (1, 1), None, (1, 1),
                       None, {0: [[Fraction(2)]], 1: [[Fraction(3)]]})
    assert in_lambda_vw(edge_quiver, with_j)
    with_i = QuiverRep(g, (1, 1), None, (1, 1),
                       {0: [[Fraction(1)]], 1: [[Fraction(0)]]}, None)
    assert not in_lambda_vw(edge_quiver, with_i)


def test_framed_form_antisymmetry(edge_quiver):
    g = edge_quiver.graph
    rng = random.Random(17)
    for _ in range(15):
        b = random_rep(g, (2, 1), rng, wdims=(1, 2))
        bp = random_rep(g, (2, 1), rng, wdims=(1, 2))
        assert framed_form(edge_quiver, b, bp) == -framed_form(edge_quiver, bp, b)
        assert framed_form(edge_quiver, b, b) == 0


def test_parse_rep(edge_quiver):
    g = edge_quiver.graph
    text = """
# a small fixture
dim 1 1
dim 2 2
wdim 2 1
map e1 2x1 : 1,;1/2,
map e1~ 1x2 : 0,0
jmap 2 1x2 : 2,3
"""
    rep = parse_rep(text, g)
    assert rep.dims == (1, 2)
    assert rep.B[0] == [[Fraction(1)], [Fraction(1, 2)]]
    assert rep.B[1] == [[Fraction(0), Fraction(0)]]
    assert rep.jmaps[1] == [[Fraction(2), Fraction(3)]]
    assert in_lambda_vw(edge_quiver, rep)


def test_parse_rep_bad_shape(edge_quiver):
    with pytest.raises(QuiverError):
        parse_rep("dim 1 1\ndim 2 1\nmap e1 2x2 : 1,0;0,1\n", edge_quiver.graph)


def test_property_suite_all_pass():
    q = parse_quiver(A3_FLIP)
    results = property_suite(q, 99, 140, max_total_dim=5)
    assert results
    assert all(ok for _, _, ok, _ in results)
    names = [r[0] for r in results]
    assert "aut-equivariance" in names


def test_property_suite_deterministic():
    q = parse_quiver(CYCLE4_REFLECTION)
    r1 = property_suite(q, 4, 70, max_total_dim=4)
    r2 = property_suite(q, 4, 70, max_total_dim=4)
    assert r1 == r2
