"""The invariant xi and the identities it satisfies.

``xi = sum over trivalent vertices of mu(e_v) - mu(f_v)`` with
``(e_v, f_v) = (e2, e3)`` at type-1 vertices and ``(e1, e3)`` at type-2
vertices (see ``VertexFrame``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycles import cocycle_values
from .fatgraph import (Fatgraph, FlipMove, InvalidInputs, attach_tail,
                       classify_vertices, edge_of, glue, greedy_tree,
                       is_balanced, tail_slide)
from .homology import (Marking, _guard, cycle_class, fundamental_cycle,
                       initial_marking, mod2, pair, pair_with_cycle,
                       pairing_vector, transport_marking)


@dataclass(frozen=True, eq=False)
class XiResult:
    xi: np.ndarray
    xi_mod2: np.ndarray
    per_vertex: list    # (vertex, e_v, f_v, contribution)

    def to_json(self):
        return {
            "xi": self.xi.tolist(),
            "xi_mod2": self.xi_mod2.tolist(),
            "per_vertex": [[v, e, f, c.tolist()] for v, e, f, c in self.per_vertex],
        }


def xi(graph: Fatgraph, m: Marking | None = None) -> XiResult:
    if m is None:
        m = initial_marking(graph)
    elif m.graph != graph:
        raise InvalidInputs("marking belongs to another graph")
    total = np.zeros(m.rank, dtype=np.int64)
    rows = []
    for fr in classify_vertices(graph):
        e, f = fr.ev_fv
        c = m.mu[e] - m.mu[f]
        total = total + c
        rows.append((fr.vertex, e, f, c))
    total = _guard(total)
    return XiResult(total, mod2(total), rows)


def xi_vector(graph, m=None) -> np.ndarray:
    return xi(graph, m).xi


def xi_mod2_direct(graph: Fatgraph, m: Marking | None = None) -> np.ndarray:
    """Sum of the mod-2 markings of all unoriented edges."""
    if m is None:
        m = initial_marking(graph)
    return m.mu[0::2].sum(axis=0) % 2


def delta_xi(move: FlipMove, m: Marking):
    """``(xi(G') - xi(G), 2 j' - m)`` for one flip."""
    m2 = transport_marking(m, move)
    lhs = xi(move.result, m2).xi - xi(move.source, m).xi
    v = cocycle_values(m, move)
    return lhs, 2 * v.jprime - v.m


def check_delta(move: FlipMove, m: Marking) -> bool:
    lhs, rhs = delta_xi(move, m)
    return bool(np.array_equal(lhs, rhs))


# -- lifted cycles ---------------------------------------------------------------

def spanning_tree(graph: Fatgraph) -> frozenset:
    """Breadth-first spanning tree from vertex 0 (any graph)."""
    seen = {0}
    queue = [0]
    tree = set()
    while queue:
        v = queue.pop(0)
        for d in graph.vertices[v]:
            w = graph.head(d ^ 1)
            if w not in seen:
                seen.add(w)
                tree.add(d >> 1)
                queue.append(w)
    return frozenset(tree)


def cycle_basis(graph: Fatgraph) -> list:
    """Fundamental cycles of a spanning tree; a basis of first homology."""
    tree = greedy_tree(graph) if graph.bordered else spanning_tree(graph)
    return [fundamental_cycle(graph, 2 * k, tree)
            for k in range(graph.nedges) if k not in tree]


def lift_path(path, d: int, n: int) -> list:
    """Image of a dart path once dart ``d`` is cut into ``d`` followed by ``n``."""
    out = []
    for x in path:
        if x == d:
            out += [d, n]
        elif x == d ^ 1:
            out += [n ^ 1, x]
        else:
            out.append(x)
    return out


def xi_punctured(graph: Fatgraph, at: int = 0):
    """``(xi of the lift at dart `at`, mu(at)) -> difference`` with its marking."""
    lift = attach_tail(graph, at)
    m = initial_marking(lift)
    return xi(lift, m).xi - m.mu[at], m


def punctured_pairings(graph: Fatgraph, at: int = 0, cycles=None) -> tuple:
    """Pairings of the punctured invariant with a fixed cycle basis of ``graph``.

    The basis lives on the punctured graph; it is carried into the lift at
    ``at`` so that different lifts can be compared.
    """
    if cycles is None:
        cycles = cycle_basis(graph)
    x, m = xi_punctured(graph, at)
    n = graph.ndarts
    return pairing_vector(m, x, [lift_path(c, at, n) for c in cycles])


def punctured_mod2_zero(graph: Fatgraph, at: int = 0) -> bool:
    x, _ = xi_punctured(graph, at)
    return not (x % 2).any()


def check_punctured_independence(graph: Fatgraph) -> bool:
    cycles = cycle_basis(graph)
    ref = punctured_pairings(graph, 0, cycles)
    return all(punctured_pairings(graph, d, cycles) == ref
               for d in range(1, graph.ndarts))


def check_balanced_criterion(graph: Fatgraph) -> bool:
    return is_balanced(graph) == punctured_mod2_zero(graph)


# -- gluing and tail slides ------------------------------------------------------

def check_gluing(host: Fatgraph, e: int, guest: Fatgraph) -> bool:
    res, _, gmap, n = glue(host, e, guest)
    off = gmap[0]
    mh, mg, mr = initial_marking(host), initial_marking(guest), initial_marking(res)
    xr = xi(res, mr).xi
    target_h = xi(host, mh).xi + mh.mu[e]
    for c in cycle_basis(host):
        if pair_with_cycle(mr, xr, lift_path(c, e, n)) != \
                pair_with_cycle(mh, target_h, c):
            return False
    xg = xi(guest, mg).xi
    for c in cycle_basis(guest):
        if pair_with_cycle(mr, xr, [x + off for x in c]) != pair_with_cycle(mg, xg, c):
            return False
    return True


def check_tail_slide(graph: Fatgraph, m: Marking | None = None) -> bool:
    if m is None:
        m = initial_marking(graph)
    move, c = tail_slide(graph)
    m2 = transport_marking(m, move)
    return bool(np.array_equal(xi(move.result, m2).xi - xi(graph, m).xi, m.mu[c]))


def tail_slide_orbit(graph: Fatgraph, steps: int):
    """Slide the tail ``steps`` times.

    Returns ``(sum of mu(c), start marking, final marking)``; the markings
    live on isomorphic graphs when the orbit closes (see ``markings_match``).
    """
    m0 = m = initial_marking(graph)
    total = np.zeros(m.rank, dtype=np.int64)
    g = graph
    for _ in range(steps):
        move, c = tail_slide(g)
        total = total + m.mu[c]
        m = transport_marking(m, move)
        g = move.result
    return total, m0, m


# -- chord diagrams --------------------------------------------------------------

def chord_pairings(graph: Fatgraph, m: Marking | None = None) -> dict:
    """Data for the pairing identities of a chord diagram.

    Returns, for each chord ``f_k`` (``k >= 1``), the class ``x_k`` formed by
    the contributions of its two end vertices and the class of its
    fundamental cycle, plus the pairings of ``x_k`` and ``xi`` with the
    chords.
    """
    if m is None:
        m = initial_marking(graph)
    g = graph.genus
    order = graph.order
    f0 = order[4 * g - 1]
    tree = greedy_tree(graph)
    chords = [f0] + sorted((graph.preferred_dart(k) for k in range(graph.nedges)
                            if k not in tree and k != edge_of(f0)),
                           key=lambda d: graph.pos[d])
    res = xi(graph, m)
    contrib = {v: c for v, _, _, c in res.per_vertex}
    rows = []
    for f in chords[1:]:
        xk = contrib[graph.head(f ^ 1)] + contrib[graph.head(f)]
        cyc = fundamental_cycle(graph, f, tree)
        rows.append({
            "chord": f,
            "class": xk,
            "cycle_class": cycle_class(m, cyc),
            "pairings": [pair(m, xk, m.mu[h]) for h in chords],
            "cycle_pairings": [-pair_with_cycle(m, m.mu[h], cyc) for h in chords],
        })
    return {"chords": chords, "rows": rows,
            "xi_f0": pair(m, res.xi, m.mu[f0])}
