import math
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fatgraph_xi import examples as X
from fatgraph_xi.enumeration import WalkSpec, enumerate_graphs, random_graphs, random_walk
from fatgraph_xi.fatgraph import flip, flippable_edges, isomorphism
from fatgraph_xi.homology import (DimensionMismatch, NotClosed, SameEdge, cycle_class,
                                  dart_coefficients, fundamental_cycle, initial_marking,
                                  int_det, int_inverse, intersection_sign, is_primitive,
                                  marking_problems, pair, pair_with_cycle, relabel_marking,
                                  transport_marking, walk_marking)

B12 = enumerate_graphs(1) + enumerate_graphs(2)
R3 = random_graphs(3, 8, seed=5)


def chord_crossing(pos, n, d1, d2):
    """Orientation of two straight chords of the regular n-gon, or 0."""
    def pt(i):
        a = 2 * math.pi * i / n
        return np.array([math.cos(a), math.sin(a)])
    p1, p2 = pt(pos[d1]), pt(pos[d1 ^ 1])
    q1, q2 = pt(pos[d2]), pt(pos[d2 ^ 1])

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    def orient(a, b, c):
        return np.sign(cross(b - a, c - a))
    if orient(p1, p2, q1) * orient(p1, p2, q2) < 0 and orient(q1, q2, p1) * orient(q1, q2, p2) < 0:
        return int(np.sign(cross(p2 - p1, q2 - q1)))
    return 0


def test_intersection_sign_matches_geometry():
    signs = set()
    for g in B12 + R3:
        n = g.ndarts
        for d1 in range(n):
            for d2 in range(n):
                if d1 >> 1 == d2 >> 1:
                    continue
                geo = chord_crossing(g.pos, n, d1, d2)
                ours = intersection_sign(g.boundary_order(), d1, d2)
                assert (geo == 0) == (ours == 0)
                if geo:
                    signs.add(ours * geo)
    assert len(signs) == 1          # one global orientation convention


def test_same_edge_rejected():
    g = X.ladder(1)
    with pytest.raises(SameEdge):
        intersection_sign(g.pos, 2, 3)


@pytest.mark.parametrize("g", B12 + R3, ids=lambda g: "g%d" % g.genus)
def test_marking_invariants(g):
    m = initial_marking(g)
    assert marking_problems(m) == []
    assert m.rank == 2 * g.genus
    assert not m.mu[g.tail].any()
    # the marking reads intersections of dual chords directly
    n = g.ndarts
    for d1 in range(n):
        for d2 in range(n):
            if d1 >> 1 != d2 >> 1:
                assert pair(m, m.mu[d1], m.mu[d2]) == intersection_sign(g.pos, d1, d2)


def test_fundamental_cycles_closed():
    for g in B12:
        m = initial_marking(g)
        for i, f in enumerate(m.basis):
            cyc = fundamental_cycle(g, f)
            w = dart_coefficients(cyc, g.ndarts)
            assert np.array_equal(m.mu[:, i], w)


def test_cycle_class_pairs_consistently():
    rng = np.random.default_rng(0)
    for g in B12[:40]:
        m = initial_marking(g)
        for f in m.basis:
            cyc = fundamental_cycle(g, f)
            c = cycle_class(m, cyc)
            for _ in range(3):
                x = rng.integers(-3, 4, m.rank)
                assert pair(m, x, c) == pair_with_cycle(m, x, cyc)


def test_pairing_errors():
    m = initial_marking(X.ladder(1))
    with pytest.raises(DimensionMismatch):
        pair(m, [1, 0, 0], [0, 1])
    with pytest.raises(NotClosed):
        pair_with_cycle(m, [1, 0], [2])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(B12), st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_pair_properties(g, xs, ys):
    m = initial_marking(g)
    x = np.array(xs[:m.rank])
    y = np.array(ys[:m.rank])
    assert pair(m, x, y) == -pair(m, y, x)
    assert pair(m, x, x) == 0
    assert pair(m, 2 * x + y, y) == 2 * pair(m, x, y)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=6))
def test_primitive_oracle(xs):
    x = np.array(xs)
    g = 0
    for v in xs:
        g = gcd(g, v)
    assert is_primitive(x) == (g == 1)
    # unimodular J: gcd(x^T J) = gcd(x)
    if len(xs) == 4:
        J = initial_marking(enumerate_graphs(2)[0]).J
        h = 0
        for v in (x @ J).tolist():
            h = gcd(h, v)
        assert h == g


def test_transport_preserves_invariants():
    for g in B12:
        m = initial_marking(g)
        for k in flippable_edges(g):
            mv = flip(g, k)
            m2 = transport_marking(m, mv)
            assert marking_problems(m2) == []
            assert np.array_equal(m2.J, m.J)
            # flipping back restores the marking exactly
            assert transport_marking(m2, flip(mv.result, k)) == m


def test_walk_marking_stays_exact():
    start = X.ladder(3)
    m = initial_marking(start)
    for _, mv in random_walk(WalkSpec(8, 2000, 3, start)):
        m = walk_marking(m, mv)
        assert int(np.abs(m.mu).max()) <= 1 << 12
    assert marking_problems(m) == []


def test_relabel_marking():
    rng = np.random.default_rng(2)
    for g in B12[:30]:
        h = g.random_relabel(rng)
        m = initial_marking(g)
        mh = relabel_marking(m, isomorphism(g, h), h)
        assert marking_problems(mh) == []


def test_exact_helpers():
    M = np.array([[2, 1], [1, 1]])
    assert int_det(M) == 1
    assert np.array_equal(int_inverse(M) @ M, np.eye(2, dtype=np.int64))
    with pytest.raises(ArithmeticError):
        int_inverse(np.array([[2, 0], [0, 1]]))
