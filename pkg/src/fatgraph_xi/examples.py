"""Hand-encoded spines used as fixed test inputs."""
from __future__ import annotations

from .fatgraph import Fatgraph, InvalidInputs


def ladder_edges(g: int) -> dict:
    """Edge numbers ``(i, j) -> k`` of the genus-``g`` ladder; blocks are 1-based."""
    out = {}
    k = 0
    for i in range(1, g + 1):
        for j in range(6 if i < g else 5):
            out[(i, j)] = k
            k += 1
    return out


def ladder(g: int) -> Fatgraph:
    """Chain of ``g`` blocks of six edges hanging off the tail.

    Block ``i`` has vertices ``v1..v4`` (``v4`` only when ``i < g``) and
    edges ``e0..e5``; dart ``2k`` of each edge is its preferred orientation.
    ``e0`` enters the block at ``v1``, ``e1: v1->v2``, ``e2: v2->v3``,
    ``e3: v2->v3``, ``e4: v1->v4`` and ``e5: v4->v3``.  The last block has no
    ``v4`` or ``e5``; there ``e4`` runs ``v1->v3``.
    """
    if g < 1:
        raise InvalidInputs("genus must be positive")
    E = ladder_edges(g)

    def e(i, j):
        return 2 * E[(i, j)]

    def eb(i, j):
        return 2 * E[(i, j)] + 1

    cycles = [[eb(1, 0)]]
    for i in range(1, g + 1):
        cycles.append([e(i, 0), eb(i, 1), eb(i, 4)])
        cycles.append([e(i, 1), eb(i, 2), e(i, 3)])
        if i < g:
            cycles.append([e(i, 2), eb(i, 3), e(i, 5)])
            cycles.append([e(i, 4), eb(i, 5), eb(i + 1, 0)])
        else:
            cycles.append([e(i, 2), eb(i, 3), e(i, 4)])
    return Fatgraph.from_cycles(cycles, tail=e(1, 0))


# Genus-2 punctured spines on six vertices A..F.  Edges:
#   0 A-B  1 B-C  2 D-E  3 E-F  4 B-E  5,6 A-D  7,8 C-F
_BALANCED_NONZERO = [
    [1, 11, 13],   # A
    [3, 0, 9],     # B
    [15, 2, 17],   # C
    [5, 10, 12],   # D
    [7, 8, 4],     # E
    [14, 6, 16],   # F
]


def balanced_nonzero() -> Fatgraph:
    """Balanced genus-2 punctured spine whose invariant is nonzero."""
    return Fatgraph.from_cycles(_BALANCED_NONZERO)


def balanced_zero_ladder() -> Fatgraph:
    """Same drawing with the cyclic order at E reversed; invariant zero."""
    cyc = [list(c) for c in _BALANCED_NONZERO]
    cyc[4] = [7, 4, 8]
    return Fatgraph.from_cycles(cyc)


def balanced_zero_hexagon() -> Fatgraph:
    """Genus-2 hexagon P1..P6 with three long diagonals; invariant zero.

    Edges: 0 P1-P2, 1 P2-P3, 2 P3-P4, 3 P4-P5, 4 P1-P6, 5 P6-P5,
    6 P6-P3, 7 P1-P4, 8 P2-P5.
    """
    return Fatgraph.from_cycles([
        [1, 15, 9],
        [17, 0, 3],
        [5, 2, 12],
        [14, 4, 7],
        [10, 16, 6],
        [11, 8, 13],
    ])


def linear_chord_diagram(pairs) -> Fatgraph:
    """Interval of trivalent vertices with chords attached along one side.

    ``pairs`` matches the chord feet ``0..4g-1`` in order along the interval;
    feet ``4g-2`` and ``4g-1`` share the last vertex.  Tail is edge 0.
    """
    feet = sorted(x for p in pairs for x in p)
    m = len(feet)
    if m % 4 or feet != list(range(m)):
        raise InvalidInputs("chord feet must be 0..4g-1")
    g = m // 4
    nint = 4 * g - 1          # interval edges, tail first
    # interval edge i runs w_{i-1} -> w_i (w_{-1} is the univalent end)
    k = nint
    foot_dart = {}
    for p, q in sorted(tuple(sorted(p)) for p in pairs):
        foot_dart[q] = 2 * k       # chord oriented p -> q
        foot_dart[p] = 2 * k + 1
        k += 1
    cycles = [[1]]
    for i in range(nint):
        if i + 1 < nint:
            # interval in, out-reversal, chord foot: chords on the left
            cycles.append([2 * i, 2 * (i + 1) + 1, foot_dart[i]])
        else:
            cycles.append([2 * i, foot_dart[i + 1], foot_dart[i]])
    return Fatgraph.from_cycles(cycles, tail=0)
