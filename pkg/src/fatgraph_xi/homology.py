"""Homology markings, the intersection form and pairings with edge cycles.

Coordinates are taken in the basis ``mu(f_1), ..., mu(f_2g)`` where the
``f_i`` are the non-tree edges of the greedy tree (preferred orientation,
boundary order) of the graph the marking was first built on.  Markings are
carried across flips without changing this basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np
import sympy

from .fatgraph import (Fatgraph, FlipMove, FatgraphError, InvalidInputs,
                       greedy_tree, is_closed_path, non_tree_edges)

# markings stay tiny at desk scale; anything near this is a bug
_LIMIT = 1 << 40


class DimensionMismatch(FatgraphError):
    pass


class SameEdge(FatgraphError):
    pass


class NotClosed(FatgraphError):
    pass


class OverflowGuard(ArithmeticError):
    pass


def _guard(a):
    a = np.asarray(a, dtype=np.int64)
    if a.size and int(np.abs(a).max()) >= _LIMIT:
        raise OverflowGuard("coordinate exceeds %d" % _LIMIT)
    return a


def _frozen(a):
    a = _guard(a)
    a.flags.writeable = False
    return a


def int_inverse(M) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix."""
    S = sympy.Matrix(np.asarray(M, dtype=object))
    d = S.det()
    if d not in (1, -1):
        raise ArithmeticError("matrix is not unimodular (det %s)" % d)
    return np.array(S.inv().tolist(), dtype=np.int64)


def int_det(M) -> int:
    return int(sympy.Matrix(np.asarray(M, dtype=object)).det())


# -- chords --------------------------------------------------------------------

def _on_arc(a: int, b: int, x: int, n: int) -> bool:
    """``x`` lies strictly on the forward arc from ``a`` to ``b`` mod ``n``."""
    return 0 < (x - a) % n < (b - a) % n


def intersection_sign(order, d1: int, d2: int) -> int:
    """Signed crossing of the dual chords of two darts.

    The chord of ``d`` runs from ``pos(d)`` to ``pos(d ^ 1)`` on the boundary
    circle.  Crossing chords give ``-1`` when ``d2`` starts on the forward
    arc of ``d1``, else ``+1``.
    """
    if d1 >> 1 == d2 >> 1:
        raise SameEdge("darts %d and %d lie on one edge" % (d1, d2))
    pos = order.pos if hasattr(order, "pos") else order
    n = len(pos)
    A, B = pos[d1], pos[d1 ^ 1]
    C, D = pos[d2], pos[d2 ^ 1]
    c_in = _on_arc(A, B, C, n)
    if c_in == _on_arc(A, B, D, n):
        return 0
    return -1 if c_in else 1


# -- markings ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Marking:
    graph: Fatgraph
    mu: np.ndarray          # (ndarts, 2g)
    J: np.ndarray           # (2g, 2g)
    basis: tuple            # darts the basis vectors were read off

    @property
    def rank(self) -> int:
        return self.J.shape[0]

    def __getitem__(self, d: int) -> np.ndarray:
        return self.mu[d]

    def __eq__(self, other):
        return (isinstance(other, Marking) and self.graph == other.graph
                and np.array_equal(self.mu, other.mu)
                and np.array_equal(self.J, other.J))

    __hash__ = None

    @cached_property
    def _cycle_data(self):
        # rows: classes of the current graph's non-tree edges
        hs = non_tree_edges(self.graph)
        F = np.array([self.mu[h] for h in hs], dtype=np.int64)
        Finv = int_inverse(F)
        FJinv = int_inverse(F @ self.J)
        return hs, Finv, FJinv

    def cycle_coefficients(self, path: Sequence[int]) -> np.ndarray:
        hs, _, _ = self._cycle_data
        idx = {h: i for i, h in enumerate(hs)}
        c = np.zeros(len(hs), dtype=np.int64)
        for d in path:
            if d in idx:
                c[idx[d]] += 1
            elif d ^ 1 in idx:
                c[idx[d ^ 1]] -= 1
        return c


def fundamental_cycle(graph: Fatgraph, f: int, tree=None) -> list:
    """``f`` followed by the tree path from its head back to its start."""
    if tree is None:
        tree = greedy_tree(graph)
    start, goal = graph.head(f), graph.head(f ^ 1)
    prev = {start: None}
    queue = [start]
    while queue and goal not in prev:
        v = queue.pop(0)
        for d in graph.vertices[v]:
            # leave v along the reversal of an incoming tree dart
            out = d ^ 1
            if out >> 1 in tree:
                w = graph.head(out)
                if w not in prev:
                    prev[w] = (v, out)
                    queue.append(w)
    path = []
    v = goal
    while prev[v] is not None:
        u, d = prev[v]
        path.append(d)
        v = u
    return [f] + path[::-1]


def dart_coefficients(path: Sequence[int], ndarts: int) -> np.ndarray:
    w = np.zeros(ndarts, dtype=np.int64)
    for d in path:
        w[d] += 1
        w[d ^ 1] -= 1
    return w


def initial_marking(graph: Fatgraph) -> Marking:
    if not graph.bordered:
        raise InvalidInputs("markings are built on bordered spines")
    tree = greedy_tree(graph)
    fs = non_tree_edges(graph)
    r = len(fs)
    mu = np.zeros((graph.ndarts, r), dtype=np.int64)
    for i, f in enumerate(fs):
        w = dart_coefficients(fundamental_cycle(graph, f, tree), graph.ndarts)
        if np.abs(w).max() > 1:
            raise AssertionError("fundamental cycle of %d is not simple" % f)
        mu[:, i] = w
    order = graph.boundary_order()
    J = np.array([[0 if i == j else intersection_sign(order, fs[i], fs[j])
                   for j in range(r)] for i in range(r)], dtype=np.int64)
    return Marking(graph, _frozen(mu), _frozen(J), tuple(fs))


def transport_marking(m: Marking, move: FlipMove) -> Marking:
    if move.source != m.graph:
        raise InvalidInputs("marking does not belong to the flip's source")
    a, b, c, d, _ = move.frame
    res = move.result
    z = res.sigma[c]       # new-edge dart sharing a vertex with b and c
    mu = m.mu.copy()
    new = -m.mu[b] - m.mu[c]
    other = -m.mu[d] - m.mu[a]
    if not np.array_equal(new, -other):
        raise AssertionError("vertex relations disagree across the flip")
    mu[z] = new
    mu[z ^ 1] = other
    return Marking(res, _frozen(mu), m.J, m.basis)


def walk_marking(m: Marking, move: FlipMove, bound: int = 1 << 10) -> Marking:
    """Transport along a walk, re-marking from scratch once coordinates get large.

    Long random walks drift in the mapping class group, so transported
    coordinates grow exponentially; restarting keeps everything exact.
    """
    m = transport_marking(m, move)
    if int(np.abs(m.mu).max()) > bound:
        return initial_marking(m.graph)
    return m


def relabel_marking(m: Marking, dart_map: Sequence[int], target: Fatgraph) -> Marking:
    mu = np.zeros_like(m.mu)
    for d, e in enumerate(dart_map):
        mu[e] = m.mu[d]
    return Marking(target, _frozen(mu), m.J, tuple(dart_map[d] for d in m.basis))


# -- pairings ------------------------------------------------------------------

def _vec(m: Marking, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (m.rank,):
        raise DimensionMismatch("expected a vector of length %d, got %s" % (m.rank, x.shape))
    return x


def pair(m: Marking, x, y) -> int:
    x, y = _vec(m, x), _vec(m, y)
    return int(x @ m.J @ y)


def pair_with_cycle(m: Marking, x, path: Sequence[int]) -> int:
    """Intersection number of ``x`` with the class of a closed dart path."""
    x = _vec(m, x)
    if not is_closed_path(m.graph, path):
        raise NotClosed("dart path is not a closed walk")
    _, Finv, _ = m._cycle_data
    return int(x @ Finv @ m.cycle_coefficients(path))


def cycle_class(m: Marking, path: Sequence[int]) -> np.ndarray:
    if not is_closed_path(m.graph, path):
        raise NotClosed("dart path is not a closed walk")
    _, _, FJinv = m._cycle_data
    return _guard(FJinv @ m.cycle_coefficients(path))


def pairing_vector(m: Marking, x, cycles) -> tuple:
    return tuple(pair_with_cycle(m, x, p) for p in cycles)


def is_primitive(x) -> bool:
    g = 0
    for v in np.asarray(x).tolist():
        g = gcd(g, int(v))
    return g == 1


# -- mod 2 ---------------------------------------------------------------------

def mod2(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64) % 2


def mod2_marking(m: Marking) -> np.ndarray:
    """Per-edge mod-2 classes (row ``k`` for edge ``k``)."""
    return m.mu[0::2] % 2


# -- invariants ------------------------------------------------------------------

def marking_problems(m: Marking) -> list:
    out = []
    mu = m.mu
    if not np.array_equal(mu[0::2], -mu[1::2]):
        out.append("reversal does not negate")
    for k, cyc in enumerate(m.graph.vertices):
        s = sum(mu[d] for d in cyc)
        if np.any(s):
            out.append("vertex v%d sum is %s" % (k, s.tolist()))
            break
    if not np.array_equal(m.J, -m.J.T):
        out.append("J is not skew")
    if abs(int_det(m.J)) != 1:
        out.append("det J = %d" % int_det(m.J))
    # generation: the classes of any cotree basis are unimodular
    hs = non_tree_edges(m.graph)
    if abs(int_det(np.array([mu[h] for h in hs]))) != 1:
        out.append("markings do not generate")
    return out
