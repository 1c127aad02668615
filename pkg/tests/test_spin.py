import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fatgraph_xi import examples as X
from fatgraph_xi.enumeration import enumerate_graphs
from fatgraph_xi.fatgraph import flip, flippable_edges
from fatgraph_xi.homology import initial_marking, transport_marking
from fatgraph_xi.spin import (EdgeForm, NotInQ, check_quadratic, extend_form, extended_value,
                              form_difference, gf2_rank, gf2_solve, q_bar, q_G, q_membership,
                              q_space, q_space_size, q_wind, spin_report, transport_form,
                              wind_lambda)
from fatgraph_xi.xi import xi

B1 = enumerate_graphs(1)
B2 = enumerate_graphs(2)


def test_ladder_forms():
    G = X.ladder(1)
    assert q_G(G).values == (0, 0, 0, 1, 0)
    assert q_bar(G).values == (0, 0, 1, 0, 0)
    assert q_wind(G).values == (0, 1, 0, 0, 1)
    assert wind_lambda(G) == (3, 1, 3, 3, 1)
    assert q_G(G).to_json()[3] == "3:1"


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10_000))
def test_gf2_solve(rows, cols, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 2, (rows, cols))
    x = rng.integers(0, 2, cols)
    b = (A @ x) % 2
    y = gf2_solve(A, b)
    assert y is not None and np.array_equal((A @ y) % 2, b)
    assert gf2_rank(A) <= min(rows, cols)


def test_gf2_inconsistent():
    assert gf2_solve([[1, 1], [1, 1]], [0, 1]) is None


def test_q_space_is_bijection_g1():
    # 4^g forms in Q(G), and they extend to 4^g distinct quadratic forms
    G = X.ladder(1)
    m = initial_marking(G)
    forms = q_space(G)
    assert len(forms) == q_space_size(G) == 4
    quads = {extend_form(G, m, f) for f in forms}
    assert len(quads) == 4


def test_q_space_size_g2():
    for g in B2[::10]:
        assert q_space_size(g) == 16


def test_extension_is_quadratic():
    for g in B1 + B2[::9]:
        m = initial_marking(g)
        q = extend_form(g, m, q_G(g))
        r = m.rank
        for x in itertools.product((0, 1), repeat=r):
            for y in itertools.product((0, 1), repeat=r):
                assert check_quadratic(q, x, y)


def test_extension_on_chains():
    # evaluating through any chain representing a class gives the same value
    rng = np.random.default_rng(4)
    for g in B2[:15]:
        m = initial_marking(g)
        q = extend_form(g, m, q_bar(g))
        mu2 = m.mu[0::2] % 2
        for _ in range(10):
            chain = rng.integers(0, 2, g.nedges)
            cls = (chain @ mu2) % 2
            assert extended_value(g, m, q_bar(g), chain) == q(cls)


@pytest.mark.parametrize("g", B1 + B2, ids=lambda g: "g%d" % g.genus)
def test_report(g):
    rep = spin_report(g)
    assert rep.members and rep.difference_is_xi and rep.distinct and rep.lambda_odd
    assert rep.q_size == 4 ** g.genus


def test_difference_is_xi_mod2():
    for g in B2:
        m = initial_marking(g)
        d = form_difference(g, m, q_G(g), q_bar(g))
        assert np.array_equal(d, xi(g, m).xi_mod2)


def test_transport_naturality():
    for g in B2[::3]:
        m = initial_marking(g)
        for f in (q_G(g), q_bar(g), q_wind(g)):
            q = extend_form(g, m, f)
            for k in flippable_edges(g):
                mv = flip(g, k)
                f2 = transport_form(mv, f)
                assert q_membership(mv.result, f2)
                assert extend_form(mv.result, transport_marking(m, mv), f2) == q
                # only the flipped edge changes value
                assert all(f2[i] == f[i] for i in range(g.nedges) if i != k)


def test_not_in_q():
    G = X.ladder(1)
    bad = EdgeForm(tuple(1 - v for v in q_G(G).values))
    assert not q_membership(G, bad)
    with pytest.raises(NotInQ):
        extend_form(G, initial_marking(G), bad)
    with pytest.raises(NotInQ):
        transport_form(flip(G, flippable_edges(G)[0]), bad)
