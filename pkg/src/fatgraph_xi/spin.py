"""Quadratic forms over GF(2) attached to a bordered spine.

An edge form ``q: E -> Z/2`` belongs to ``Q(G)`` when the three edges at every
trivalent vertex sum to 0 at type-1 vertices and to 1 at type-2 vertices.
Such a form extends to mod-2 homology by

    q(sum m_e mu(e)) = sum m_e q(e) + sum_{e < e'} m_e m_e' (mu(e) . mu(e'))

and every quadratic form arises this way exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .fatgraph import (Fatgraph, FatgraphError, FlipMove, classify_vertices,
                       corners, vertex_frame)
from .homology import Marking, initial_marking


class NotInQ(FatgraphError):
    pass


class SingularGram(FatgraphError):
    pass


# -- GF(2) linear algebra ----------------------------------------------------------

def gf2_rref(A):
    """Reduced row echelon form over GF(2); returns ``(R, pivots)``."""
    R = np.array(A, dtype=np.uint8) % 2
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        hit = np.nonzero(R[r:, c])[0]
        if not len(hit):
            continue
        p = r + hit[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] ^= R[r]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return R, piv


def gf2_rank(A) -> int:
    return len(gf2_rref(A)[1])


def gf2_solve(A, b):
    """One solution ``x`` of ``A x = b`` over GF(2), or None."""
    A = np.array(A, dtype=np.uint8) % 2
    b = np.array(b, dtype=np.uint8).reshape(-1, 1) % 2
    R, piv = gf2_rref(np.hstack([A, b]))
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for i, c in enumerate(piv):
        x[c] = R[i, -1]
    return x


# -- forms -----------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeForm:
    values: tuple       # one bit per unoriented edge
    tag: str = "custom"

    def __getitem__(self, k):
        return self.values[k]

    def of_dart(self, d: int) -> int:
        return self.values[d >> 1]

    def to_json(self):
        return ["%d:%d" % (k, v) for k, v in enumerate(self.values)]


@dataclass(frozen=True)
class QuadForm:
    basis_values: tuple
    gram: tuple         # J mod 2, row tuples

    def __call__(self, x) -> int:
        x = np.asarray(x, dtype=np.int64) % 2
        G = np.array(self.gram, dtype=np.int64)
        v = int(x @ np.array(self.basis_values, dtype=np.int64))
        # strictly upper triangle of x x^T weighted by the Gram matrix
        v += int(x @ np.triu(G, 1) @ x)
        return v % 2

    def to_json(self):
        return {"basis": list(self.basis_values), "gram": [list(r) for r in self.gram]}


def vertex_equations(graph: Fatgraph):
    """Rows and right-hand sides of the ``Q(G)`` conditions, one per vertex."""
    rows, rhs = [], []
    for fr in classify_vertices(graph):
        r = np.zeros(graph.nedges, dtype=np.uint8)
        for d in fr.darts:
            r[d >> 1] ^= 1      # a loop would cancel itself here
        rows.append(r)
        rhs.append(fr.type - 1)
    return np.array(rows), np.array(rhs, dtype=np.uint8)


def q_membership(graph: Fatgraph, form: EdgeForm) -> bool:
    A, b = vertex_equations(graph)
    v = np.array(form.values, dtype=np.uint8)
    return bool(np.array_equal((A.astype(np.int64) @ v) % 2, b))


def q_space_size(graph: Fatgraph) -> int:
    """``|Q(G)|`` from the rank of the vertex system (0 if inconsistent)."""
    A, b = vertex_equations(graph)
    if gf2_solve(A, b) is None:
        return 0
    return 2 ** (graph.nedges - gf2_rank(A))


def q_space(graph: Fatgraph) -> list:
    """Every member of ``Q(G)``; only sensible for small graphs."""
    A, b = vertex_equations(graph)
    x0 = gf2_solve(A, b)
    if x0 is None:
        return []
    R, piv = gf2_rref(A)
    free = [c for c in range(graph.nedges) if c not in piv]
    kernel = []
    for f in free:
        v = np.zeros(graph.nedges, dtype=np.uint8)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = R[i, f]
        kernel.append(v)
    out = []
    for bits in product((0, 1), repeat=len(kernel)):
        v = x0.copy()
        for bit, k in zip(bits, kernel):
            if bit:
                v ^= k
        out.append(EdgeForm(tuple(int(t) for t in v)))
    return out


def extended_value(graph: Fatgraph, m: Marking, form: EdgeForm, chain) -> int:
    """The extension evaluated on an edge chain (one bit per edge)."""
    chain = np.asarray(chain, dtype=np.int64) % 2
    mu2 = m.mu[0::2] % 2
    J2 = m.J % 2
    v = int(chain @ np.array(form.values, dtype=np.int64))
    es = np.nonzero(chain)[0]
    for i, e in enumerate(es):
        for f in es[i + 1:]:
            v += int(mu2[e] @ J2 @ mu2[f])
    return v % 2


def basis_chains(graph: Fatgraph, m: Marking) -> list:
    """For each basis class, an edge chain whose mod-2 marking is that class."""
    A = (m.mu[0::2] % 2).T      # columns: edges
    out = []
    for i in range(m.rank):
        e = np.zeros(m.rank, dtype=np.uint8)
        e[i] = 1
        x = gf2_solve(A, e)
        if x is None:
            raise AssertionError("mod-2 markings do not span")
        out.append(x)
    return out


def extend_form(graph: Fatgraph, m: Marking, form: EdgeForm) -> QuadForm:
    if not q_membership(graph, form):
        raise NotInQ("edge form violates a vertex condition")
    vals = tuple(extended_value(graph, m, form, c) for c in basis_chains(graph, m))
    gram = tuple(tuple(int(v) for v in row) for row in (m.J % 2))
    return QuadForm(vals, gram)


def check_quadratic(q: QuadForm, x, y) -> bool:
    x = np.asarray(x, dtype=np.int64) % 2
    y = np.asarray(y, dtype=np.int64) % 2
    G = np.array(q.gram, dtype=np.int64)
    return (q((x + y) % 2) - q(x) - q(y) - int(x @ G @ y)) % 2 == 0


# -- the named forms -----------------------------------------------------------

def q_G(graph: Fatgraph) -> EdgeForm:
    """Per edge: number of preferred darts strictly between ``e`` and its reversal."""
    p = graph.pos
    pref = [graph.preferred_dart(k) for k in range(graph.nedges)]
    vals = []
    for e in pref:
        lo, hi = p[e], p[e ^ 1]
        vals.append(sum(1 for f in pref if lo < p[f] < hi) % 2)
    return EdgeForm(tuple(vals), "q_G")


def q_bar(graph: Fatgraph) -> EdgeForm:
    """Per edge: number of non-preferred darts strictly between ``e`` and its reversal."""
    p = graph.pos
    pref = [graph.preferred_dart(k) for k in range(graph.nedges)]
    vals = []
    for e in pref:
        lo, hi = p[e], p[e ^ 1]
        vals.append(sum(1 for f in pref if lo < p[f ^ 1] < hi) % 2)
    return EdgeForm(tuple(vals), "q_bar")


def wind_lambda(graph: Fatgraph) -> tuple:
    """Per edge: corners between ``e`` and its reversal that switch preference."""
    p = graph.pos
    cs = corners(graph)
    out = []
    for k in range(graph.nedges):
        e = graph.preferred_dart(k)
        lo, hi = p[e], p[e ^ 1]
        out.append(sum(1 for f, f2 in cs
                       if lo <= p[f] and p[f2] <= hi
                       and graph.preferred(f) != graph.preferred(f2)))
    return tuple(out)


def q_wind(graph: Fatgraph) -> EdgeForm:
    lam = wind_lambda(graph)
    for k, v in enumerate(lam):
        if v % 2 == 0:
            raise AssertionError("even corner count on edge %d" % k)
    return EdgeForm(tuple(((1 + v) // 2) % 2 for v in lam), "q_wind")


# -- transport and differences ---------------------------------------------------

def transport_form(move: FlipMove, form: EdgeForm) -> EdgeForm:
    """Carry an edge form across a flip; the new edge is fixed by its endpoints."""
    src, res = move.source, move.result
    if not q_membership(src, form):
        raise NotInQ("form is not in Q of the source")
    k = move.edge
    vals = list(form.values)
    new = []
    for d in (2 * k, 2 * k + 1):
        fr = vertex_frame(res, res.head(d))
        others = sum(vals[x >> 1] for x in fr.darts if x >> 1 != k)
        new.append((fr.type - 1 - others) % 2)
    if new[0] != new[1]:
        raise NotInQ("endpoint conditions disagree on the new edge")
    vals[k] = new[0]
    return EdgeForm(tuple(vals), form.tag)


def form_difference(graph: Fatgraph, m: Marking, f1: EdgeForm, f2: EdgeForm) -> np.ndarray:
    """The mod-2 class ``d`` with ``(d . y) = f1(y) - f2(y)`` for all ``y``."""
    q1, q2 = extend_form(graph, m, f1), extend_form(graph, m, f2)
    delta = [(a - b) % 2 for a, b in zip(q1.basis_values, q2.basis_values)]
    d = gf2_solve(m.J % 2, delta)
    if d is None:
        raise SingularGram("mod-2 intersection form is singular")
    return d.astype(np.int64)


@dataclass(frozen=True)
class SpinReport:
    members: bool
    difference_is_xi: bool
    distinct: bool
    lambda_odd: bool
    q_size: int


def spin_report(graph: Fatgraph, m: Marking | None = None) -> SpinReport:
    from .xi import xi
    if m is None:
        m = initial_marking(graph)
    a, b = q_G(graph), q_bar(graph)
    lam = wind_lambda(graph)
    lam_odd = all(v % 2 for v in lam)
    w = EdgeForm(tuple(((1 + v) // 2) % 2 for v in lam), "q_wind")
    members = all(q_membership(graph, f) for f in (a, b, w))
    diff_ok = distinct = False
    if members:
        x2 = xi(graph, m).xi_mod2
        diff_ok = bool(np.array_equal(form_difference(graph, m, a, b), x2))
        qs = [extend_form(graph, m, f) for f in (a, b, w)]
        distinct = qs[0] != qs[1] and qs[0] != qs[2] and qs[1] != qs[2]
    return SpinReport(members, diff_ok, distinct, lam_odd, q_space_size(graph))
