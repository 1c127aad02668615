"""Trivalent fatgraph spines of a once-bordered or once-punctured surface.

A graph on ``2E`` darts is stored as the permutation ``sigma`` that sends an
incoming dart to the next incoming dart counterclockwise around its head
vertex.  Darts ``2k`` and ``2k + 1`` are the two orientations of edge ``k``,
so reversal is ``d ^ 1``.  A bordered spine carries a tail dart ``t``: its
head is trivalent and ``t ^ 1`` is the only dart at the univalent vertex (a
fixed point of ``sigma``).

The boundary of the complementary disk is walked by ``d -> sigma[d] ^ 1``;
starting from the tail this gives the total order on darts used everywhere
else (position 0 is the tail, the last position is its reversal).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class FatgraphError(ValueError):
    """Base class for structural errors."""


class MalformedPermutation(FatgraphError):
    pass


class BadValence(FatgraphError):
    pass


class Disconnected(FatgraphError):
    pass


class MultipleBoundaryCycles(FatgraphError):
    pass


class NotTrivalent(FatgraphError):
    pass


class TailEdge(FatgraphError):
    pass


class LoopEdge(FatgraphError):
    pass


class InvalidInputs(FatgraphError):
    pass


class OddCornerCount(FatgraphError):
    pass


def rev(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class Fatgraph:
    sigma: tuple
    tail: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        n = len(self.sigma)
        if n % 2 or sorted(self.sigma) != list(range(n)):
            raise MalformedPermutation(
                "rotation data is not a permutation of darts 0..%d" % (n - 1))
        if self.tail is not None and not 0 <= self.tail < n:
            raise MalformedPermutation("tail dart %d out of range" % self.tail)

    # -- construction -------------------------------------------------
    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], tail: int | None = None,
                    check: bool = True) -> "Fatgraph":
        cycles = [list(c) for c in cycles]
        darts = [d for c in cycles for d in c]
        n = len(darts)
        seen = set()
        for d in darts:
            if d in seen:
                raise MalformedPermutation("dart %d appears twice" % d)
            if not isinstance(d, (int, np.integer)) or d < 0:
                raise MalformedPermutation("bad dart id %r" % (d,))
            seen.add(d)
        if n % 2 or seen != set(range(n)):
            missing = sorted(set(range(max(seen, default=-1) + 2)) - seen)
            raise MalformedPermutation(
                "darts must be 0..2E-1 with both orientations of every edge; "
                "missing %s" % missing[:4])
        sigma = [0] * n
        for c in cycles:
            for i, d in enumerate(c):
                sigma[d] = c[(i + 1) % len(c)]
        g = cls(tuple(sigma), tail)
        if check:
            g.check()
        return g

    # -- basic structure ------------------------------------------------
    @property
    def bordered(self) -> bool:
        return self.tail is not None

    @property
    def kind(self) -> str:
        return "bordered" if self.bordered else "punctured"

    @property
    def ndarts(self) -> int:
        return len(self.sigma)

    @property
    def nedges(self) -> int:
        return len(self.sigma) // 2

    @cached_property
    def sigma_array(self) -> np.ndarray:
        return np.asarray(self.sigma, dtype=np.int64)

    @cached_property
    def vertices(self) -> tuple:
        """Vertex cycles, each rotated to start at its least dart, sorted."""
        seen = [False] * self.ndarts
        out = []
        for s in range(self.ndarts):
            if seen[s]:
                continue
            cyc = []
            d = s
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = self.sigma[d]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def vertex_of(self) -> tuple:
        vo = [0] * self.ndarts
        for k, cyc in enumerate(self.vertices):
            for d in cyc:
                vo[d] = k
        return tuple(vo)

    def head(self, d: int) -> int:
        return self.vertex_of[d]

    def tail_vertex(self, d: int) -> int:
        return self.vertex_of[d ^ 1]

    def succ(self, d: int) -> int:
        """Next dart along the boundary walk."""
        return self.sigma[d] ^ 1

    @cached_property
    def genus(self) -> int:
        v = len(self.vertices)
        return (self.nedges - v + 1) // 2

    @cached_property
    def univalent(self) -> int | None:
        if self.tail is None:
            return None
        return self.vertex_of[self.tail ^ 1]

    # -- validation ---------------------------------------------------------
    def problems(self) -> list:
        """First violated spine invariant as ``[exception]``, or ``[]``."""
        n = self.ndarts
        if n == 0:
            return [MalformedPermutation("empty graph")]
        ones = [c for c in self.vertices if len(c) == 1]
        if self.bordered:
            t = self.tail
            if self.sigma[t ^ 1] != t ^ 1:
                return [BadValence(
                    "tail dart %d: the vertex at %d is not univalent" % (t, t ^ 1))]
            if self.sigma[t] == t:
                return [BadValence("tail edge %d is isolated" % (t >> 1))]
            if len(ones) != 1:
                extra = [c[0] for c in ones if c[0] != t ^ 1]
                return [BadValence("univalent vertex at dart %d besides the tail" % extra[0])]
        elif ones:
            return [BadValence(
                "punctured spine has a univalent vertex at dart %d" % ones[0][0])]
        for k, c in enumerate(self.vertices):
            if len(c) != 1 and len(c) != 3:
                return [BadValence("vertex v%d (darts %s) has valence %d"
                                   % (k, list(c), len(c)))]
        # connectivity
        comp = [-1] * len(self.vertices)
        comp[0] = 0
        stack = [0]
        while stack:
            v = stack.pop()
            for d in self.vertices[v]:
                w = self.vertex_of[d ^ 1]
                if comp[w] < 0:
                    comp[w] = 0
                    stack.append(w)
        if min(comp) < 0:
            bad = comp.index(-1)
            return [Disconnected("vertex v%d (dart %d) is not reachable"
                                 % (bad, self.vertices[bad][0]))]
        label, nf = _kernels.face_cycles(self.sigma_array)
        if nf != 1:
            stray = int(np.nonzero(label != label[self.tail if self.bordered else 0])[0][0])
            return [MultipleBoundaryCycles(
                "%d boundary cycles; dart %d is off the main one" % (nf, stray))]
        if self.nedges - len(self.vertices) + 1 < 2:
            return [BadValence("genus 0")]
        return []

    def check(self) -> "Fatgraph":
        errs = self.problems()
        if errs:
            raise errs[0]
        return self

    # -- boundary order ---------------------------------------------------
    def boundary_order(self, anchor: int | None = None) -> "BoundaryOrder":
        if anchor is None:
            if self.bordered:
                return self._order
            anchor = 0
        return _make_order(self, anchor)

    @cached_property
    def _order(self) -> "BoundaryOrder":
        return _make_order(self, self.tail if self.bordered else 0)

    @property
    def order(self) -> tuple:
        return self._order.order

    @property
    def pos(self) -> tuple:
        return self._order.pos

    def preferred(self, d: int) -> bool:
        p = self._order.pos
        return p[d] < p[d ^ 1]

    def preferred_dart(self, k: int) -> int:
        return 2 * k if self.preferred(2 * k) else 2 * k + 1

    # -- misc ---------------------------------------------------------------
    def relabel(self, perm: Sequence[int], swap: Sequence[bool] | None = None) -> "Fatgraph":
        """Rename edge ``k`` to ``perm[k]``, optionally reversing its darts."""
        if swap is None:
            swap = [False] * self.nedges
        dm = [0] * self.ndarts
        for k in range(self.nedges):
            for o in (0, 1):
                dm[2 * k + o] = 2 * perm[k] + (o ^ int(bool(swap[k])))
        sig = [0] * self.ndarts
        for d in range(self.ndarts):
            sig[dm[d]] = dm[self.sigma[d]]
        t = None if self.tail is None else dm[self.tail]
        return Fatgraph(tuple(sig), t)

    def random_relabel(self, rng) -> "Fatgraph":
        perm = list(rng.permutation(self.nedges))
        swap = list(rng.integers(0, 2, self.nedges))
        return self.relabel(perm, swap)

    def dart_map_to(self, other: "Fatgraph") -> tuple | None:
        """An isomorphism self -> other as a dart map, or None."""
        return isomorphism(self, other)


@dataclass(frozen=True)
class BoundaryOrder:
    order: tuple
    pos: tuple
    cyclic: bool

    def __len__(self):
        return len(self.order)

    def precedes(self, a: int, b: int) -> bool:
        return self.pos[a] < self.pos[b]


def _make_order(g: Fatgraph, anchor: int) -> BoundaryOrder:
    walk = _kernels.boundary_walk(g.sigma_array, anchor)
    if walk[-1] < 0:
        raise MultipleBoundaryCycles("boundary walk from %d closes early" % anchor)
    order = tuple(int(d) for d in walk)
    pos = [0] * len(order)
    for i, d in enumerate(order):
        pos[d] = i
    return BoundaryOrder(order, tuple(pos), not g.bordered)


def boundary_order(graph: Fatgraph, anchor: int | None = None) -> BoundaryOrder:
    return graph.boundary_order(anchor)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str
    genus: int | None
    nvertices: int
    nedges: int
    problem: str | None = None
    error: str | None = None


def validate(graph: Fatgraph) -> ValidationReport:
    errs = graph.problems()
    if errs:
        e = errs[0]
        return ValidationReport(False, graph.kind, None, len(graph.vertices),
                                graph.nedges, str(e), type(e).__name__)
    return ValidationReport(True, graph.kind, graph.genus, len(graph.vertices),
                            graph.nedges)


# -- vertex frames ---------------------------------------------------------

@dataclass(frozen=True)
class VertexFrame:
    vertex: int
    e1: int
    e2: int
    e3: int
    type: int

    @property
    def darts(self):
        return (self.e1, self.e2, self.e3)

    @property
    def ev_fv(self):
        """The pair of darts whose markings give this vertex's share of xi."""
        if self.type == 1:
            return self.e2, self.e3
        return self.e1, self.e3


def vertex_frame(graph: Fatgraph, v: int) -> VertexFrame:
    cyc = graph.vertices[v]
    if len(cyc) != 3:
        raise NotTrivalent("vertex v%d has valence %d" % (v, len(cyc)))
    p = graph.pos
    e1 = min(cyc, key=lambda d: p[d])
    e2 = graph.sigma[e1]
    e3 = graph.sigma[e2]
    seq = [p[x] for x in (e1, e2 ^ 1, e2, e3 ^ 1, e3, e1 ^ 1)]
    if seq == sorted(seq):
        return VertexFrame(v, e1, e2, e3, 1)
    seq = [p[x] for x in (e1, e2 ^ 1, e3, e1 ^ 1, e2, e3 ^ 1)]
    if seq == sorted(seq):
        return VertexFrame(v, e1, e2, e3, 2)
    raise NotTrivalent("vertex v%d fits neither interleaving pattern" % v)


def classify_vertices(graph: Fatgraph) -> list:
    if not graph.bordered:
        raise InvalidInputs("vertex types need the tail-anchored order")
    return [vertex_frame(graph, v) for v in range(len(graph.vertices))
            if v != graph.univalent]


def type_counts(graph: Fatgraph):
    fr = classify_vertices(graph)
    t1 = sum(1 for f in fr if f.type == 1)
    return t1, len(fr) - t1


# -- corners and structural predicates --------------------------------------

def corners(graph: Fatgraph) -> list:
    order = graph.order
    n = len(order)
    if graph.bordered:
        return [(order[i], order[i + 1]) for i in range(n - 1)]
    return [(order[i], order[(i + 1) % n]) for i in range(n)]


def find_odd_edge_cycle(graph: Fatgraph) -> list:
    """Closed dart path of odd length cut out between two corners at one vertex.

    With corners ``c_i = (order[i-1], order[i])`` the path from ``c_i`` to
    ``c_j`` is ``order[i:j]``; it leaves and re-enters the shared vertex.
    """
    order = graph.order
    first = {}
    for i in range(1, len(order)):
        v = graph.head(order[i - 1])
        for j0 in first.get(v, ()):
            if (i - j0) % 2:
                return list(order[j0:i])
        first.setdefault(v, []).append(i)
    raise AssertionError("no odd corner pair; graph is not a bordered spine")


def is_closed_path(graph: Fatgraph, path: Sequence[int]) -> bool:
    if not path:
        return False
    for a, b in zip(path, list(path[1:]) + [path[0]]):
        if graph.head(a) != graph.head(b ^ 1):
            return False
    return True


def is_chord_diagram(graph: Fatgraph) -> bool:
    g = graph.genus
    return all(graph.preferred(d) for d in graph.order[:4 * g])


def is_balanced(graph: Fatgraph) -> bool:
    if graph.bordered:
        raise InvalidInputs("balance is defined for punctured spines")
    cs = corners(graph)
    if len(cs) % 2:
        raise OddCornerCount("%d corners" % len(cs))
    colour = {}
    for i, (a, _) in enumerate(cs):
        v = graph.head(a)
        if colour.setdefault(v, i % 2) != i % 2:
            return False
    return True


def greedy_tree(graph: Fatgraph) -> frozenset:
    """Edges whose preferred dart is the earliest dart into its head vertex."""
    p = graph.pos
    tree = set()
    for cyc in graph.vertices:
        first = min(cyc, key=lambda d: p[d])
        if graph.preferred(first):
            tree.add(first >> 1)
    return frozenset(tree)


def non_tree_edges(graph: Fatgraph) -> list:
    """Non-tree edges as preferred darts, in boundary order."""
    tree = greedy_tree(graph)
    p = graph.pos
    darts = [graph.preferred_dart(k) for k in range(graph.nedges) if k not in tree]
    return sorted(darts, key=lambda d: p[d])


# -- flips ------------------------------------------------------------------

@dataclass(frozen=True)
class FlipMove:
    source: Fatgraph
    edge: int
    result: Fatgraph
    a: int
    b: int
    c: int
    d: int
    e: int
    # darts keep their names across a flip
    bijection: tuple = field(default=(), repr=False)

    @property
    def frame(self):
        return self.a, self.b, self.c, self.d, self.e

    def inverse(self) -> "FlipMove":
        return flip(self.result, self.edge)


def flippable(graph: Fatgraph, k: int) -> bool:
    x = 2 * k
    if graph.bordered and (x == graph.tail or x + 1 == graph.tail):
        return False
    hx, hy = graph.head(x), graph.head(x + 1)
    if hx == hy:
        return False
    return len(graph.vertices[hx]) == 3 and len(graph.vertices[hy]) == 3


def flippable_edges(graph: Fatgraph) -> list:
    return [k for k in range(graph.nedges) if flippable(graph, k)]


def flip(graph: Fatgraph, k: int) -> FlipMove:
    """Collapse edge ``k`` and re-expand the 4-valent vertex the other way.

    With ``x = 2k`` and ``y = 2k + 1``, the frame is ``c, d`` following ``x``
    and ``a, b`` following ``y`` counterclockwise.  The outer darts then read
    ``c, d, a, b`` around the collapsed vertex and the new edge separates
    ``{b, c}`` from ``{d, a}``.  Which end of the new edge is called ``x``
    is decided by where the least outer dart sits, which makes flipping the
    same edge twice return the original rotation data exactly.
    """
    if not 0 <= k < graph.nedges:
        raise InvalidInputs("edge %d out of range" % k)
    x, y = 2 * k, 2 * k + 1
    if graph.bordered and graph.tail in (x, y):
        raise TailEdge("edge %d is the tail" % k)
    if graph.head(x) == graph.head(y):
        raise LoopEdge("edge %d is a loop" % k)
    s = graph.sigma
    c, d = s[x], s[s[x]]
    a, b = s[y], s[s[y]]
    if s[d] != x or s[b] != y:
        raise NotTrivalent("edge %d has an endpoint that is not trivalent" % k)
    sig = list(s)
    if min(a, b, c, d) in (a, c):
        cyc1, cyc2 = (y, b, c), (x, d, a)
    else:
        cyc1, cyc2 = (x, b, c), (y, d, a)
    for cyc in (cyc1, cyc2):
        for i in range(3):
            sig[cyc[i]] = cyc[(i + 1) % 3]
    res = Fatgraph(tuple(sig), graph.tail)
    return FlipMove(graph, k, res, a, b, c, d, x, tuple(range(graph.ndarts)))


def tail_slide(graph: Fatgraph):
    """Flip along the edge of the dart right after the tail.

    Returns ``(move, c)`` where ``c`` is the dart two steps counterclockwise
    after that dart at its head vertex.
    """
    if not graph.bordered:
        raise InvalidInputs("tail slide needs a tail")
    e1 = graph.order[1]
    b = graph.sigma[e1]
    c = graph.sigma[b]
    return flip(graph, e1 >> 1), c


# -- gluing and tails -------------------------------------------------------

def _split(graph: Fatgraph, d: int, extra: int):
    """Rotation data with dart ``d`` cut at a new vertex.

    Returns the sigma list (with ``extra`` spare darts appended), the new
    edge's darts ``(n, n ^ 1)`` and the list to be used as the new vertex.
    ``d`` keeps its tail and ends at the new vertex; ``n`` runs from the new
    vertex to the old head of ``d``.
    """
    N = graph.ndarts
    sig = list(graph.sigma) + [0] * (2 + extra)
    n = N
    # replace d by n in the old head cycle
    pred = graph.sigma.index(d)
    if pred == d:
        sig[n] = n
    else:
        sig[pred] = n
        sig[n] = graph.sigma[d]
    return sig, n


def glue(host: Fatgraph, d: int, guest: Fatgraph):
    """Plug the tail of ``guest`` into the right side of host dart ``d``.

    Returns ``(result, host_map, guest_map, new_edge_dart)``.  Host darts keep
    their names, the second half of ``d`` is the new dart ``n`` and guest dart
    ``x`` becomes ``x + offset``; the guest's univalent vertex disappears.
    """
    if not (host.bordered and guest.bordered):
        raise InvalidInputs("glue needs two bordered spines")
    if not 0 <= d < host.ndarts:
        raise InvalidInputs("dart %d out of range" % d)
    N = host.ndarts
    off = N + 2
    sig, n = _split(host, d, guest.ndarts)
    for x in range(guest.ndarts):
        sig[x + off] = guest.sigma[x] + off
    tp = guest.tail + off
    # the guest's univalent dart becomes incoming at the new vertex
    sig[d], sig[tp ^ 1], sig[n ^ 1] = tp ^ 1, n ^ 1, d
    res = _retail(sig, host.tail)
    host_map = tuple(range(N))
    guest_map = tuple(x + off for x in range(guest.ndarts))
    return res, host_map, guest_map, n


def _retail(sig, tail):
    t = tail
    if sig[t ^ 1] != t ^ 1:
        # the host tail was split; the univalent dart moved to the new edge
        fixed = [x for x in range(len(sig)) if sig[x] == x]
        t = fixed[0] ^ 1
    return Fatgraph(tuple(sig), t)


def attach_tail(graph: Fatgraph, d: int) -> Fatgraph:
    """Bordered lift of a punctured spine: a tail on the right side of ``d``."""
    if graph.bordered:
        raise InvalidInputs("attach_tail needs a punctured spine")
    if not 0 <= d < graph.ndarts:
        raise InvalidInputs("dart %d out of range" % d)
    sig, n = _split(graph, d, 2)
    t = n + 2
    sig[d], sig[t], sig[n ^ 1] = t, n ^ 1, d
    sig[t ^ 1] = t ^ 1
    return Fatgraph(tuple(sig), t)


def remove_tail(graph: Fatgraph) -> Fatgraph:
    """Inverse of ``attach_tail``: drop the tail and smooth its vertex."""
    if not graph.bordered:
        raise InvalidInputs("no tail to remove")
    t = graph.tail
    s = list(graph.sigma)
    m = s[t]          # reversal of the second half
    d = s[m]          # first half, ending at the tail vertex
    n = m ^ 1
    if s[d] != t:
        raise NotTrivalent("tail vertex is not trivalent")
    if n >> 1 == d >> 1:
        raise InvalidInputs("tail vertex carries a loop")
    # d takes over the old head position of n
    pred = s.index(n)
    if pred == n:
        s[d] = d
    else:
        s[pred] = d
        s[d] = s[n]
    gone = {t >> 1, n >> 1}
    keep = [k for k in range(graph.nedges) if k not in gone]
    newk = {k: i for i, k in enumerate(keep)}
    dm = {}
    for k in keep:
        dm[2 * k] = 2 * newk[k]
        dm[2 * k + 1] = 2 * newk[k] + 1
    sig = [0] * (2 * len(keep))
    for x in dm:
        sig[dm[x]] = dm[s[x]]
    return Fatgraph(tuple(sig), None)


# -- canonical forms --------------------------------------------------------

def _code(graph: Fatgraph, anchor: int) -> tuple:
    return tuple(int(v) for v in _kernels.walk_code(graph.sigma_array, anchor))


def _relabel_from(graph: Fatgraph, anchor: int) -> list:
    """Dart renaming by first appearance along the walk from ``anchor``."""
    relabel = [-1] * graph.ndarts
    d = anchor
    k = 0
    for _ in range(graph.ndarts):
        if relabel[d] < 0:
            relabel[d] = 2 * k
            relabel[d ^ 1] = 2 * k + 1
            k += 1
        d = graph.sigma[d] ^ 1
    return relabel


def canonical_anchor(graph: Fatgraph) -> int:
    if graph.bordered:
        return graph.tail
    return min(range(graph.ndarts), key=lambda a: _code(graph, a))


def canonical_graph(graph: Fatgraph) -> Fatgraph:
    a = canonical_anchor(graph)
    code = _code(graph, a)
    return Fatgraph(code, 0 if graph.bordered else None)


def canonical_relabel(graph: Fatgraph) -> list:
    """Dart map from ``graph`` onto ``canonical_graph(graph)``."""
    return _relabel_from(graph, canonical_anchor(graph))


def canonical_form(graph: Fatgraph) -> bytes:
    from .io import dumps
    return dumps(canonical_graph(graph)).encode()


def canonical_key(graph: Fatgraph) -> tuple:
    """Cheap hashable stand-in for ``canonical_form``."""
    if graph.bordered:
        return (1,) + _code(graph, graph.tail)
    return (0,) + min(_code(graph, a) for a in range(graph.ndarts))


def isomorphism(g1: Fatgraph, g2: Fatgraph):
    """Dart map ``g1 -> g2`` preserving rotation (and tail), or None."""
    if g1.ndarts != g2.ndarts or g1.bordered != g2.bordered:
        return None
    if canonical_key(g1) != canonical_key(g2):
        return None
    r1 = canonical_relabel(g1)
    r2 = canonical_relabel(g2)
    inv2 = [0] * len(r2)
    for d, c in enumerate(r2):
        inv2[c] = d
    return [inv2[r1[d]] for d in range(g1.ndarts)]
