"""Exhaustive generation of one-face trivalent spines and random flip walks.

Labelling darts by their boundary position turns the face permutation into
the shift ``x -> x + 1``, so a spine is a chord matching ``rev`` of the
positions for which ``x -> rev[x + 1]`` has all cycles of length 3 (plus the
univalent fixed point in the bordered case).  In the bordered case the tail
sits at position 0, so every matching is already a tail-anchored class and
no deduplication is needed.  Punctured matchings are deduplicated by their
least rotation.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .fatgraph import (Fatgraph, FatgraphError, canonical_form, canonical_graph,
                       flip, flippable_edges)

MAX_EXHAUSTIVE_GENUS = 3


class GenusTooLarge(FatgraphError):
    pass


@dataclass(frozen=True)
class EnumTask:
    genus: int
    kind: str = "bordered"
    limit: int | None = None


def ndarts_for(genus: int, kind: str) -> int:
    return 12 * genus - 2 if kind == "bordered" else 12 * genus - 6


def from_matching(rev, bordered: bool) -> Fatgraph:
    """Spine whose boundary walk visits the positions ``0, 1, ..., n-1``."""
    n = len(rev)
    dart = [-1] * n
    k = 0
    for x in range(n):
        if dart[x] < 0:
            dart[x] = 2 * k
            dart[int(rev[x])] = 2 * k + 1
            k += 1
    sig = [0] * n
    for x in range(n):
        sig[dart[x]] = dart[int(rev[(x + 1) % n])]
    return Fatgraph(tuple(sig), 0 if bordered else None)


def thread_count() -> int:
    try:
        t = int(os.environ.get("FATGRAPH_THREADS", "") or 0)
    except ValueError:
        t = 0
    return max(1, t or (os.cpu_count() or 1))


def _search(n, bordered, first):
    cap = 4096
    while True:
        out = np.empty((cap, n), dtype=np.int64)
        cnt = _kernels.search_matchings(n, bordered, first, out)
        if cnt <= cap:
            return out[:cnt]
        cap = int(cnt)


def matchings(genus: int, kind: str = "bordered", threads: int | None = None) -> np.ndarray:
    """All admissible matchings, in lexicographic order."""
    n = ndarts_for(genus, kind)
    bordered = kind == "bordered"
    first = 1 if bordered else 0
    partners = range(first + 1, n - 1 if bordered else n)
    threads = threads or thread_count()
    if threads == 1:
        rows = [_search(n, bordered, -1)]
    else:
        # the jitted search releases the GIL, so threads split the tree
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(lambda q: _search(n, bordered, q), partners))
    rows = [r for r in rows if len(r)]
    if not rows:
        return np.empty((0, n), dtype=np.int64)
    allrows = np.concatenate(rows)
    idx = np.lexsort(allrows.T[::-1])
    return allrows[idx]


def enumerate_graphs(genus: int, kind: str = "bordered", limit: int | None = None,
                     threads: int | None = None, exhaustive_cap: int = MAX_EXHAUSTIVE_GENUS
                     ) -> list:
    """Canonical representatives of all isomorphism classes, sorted by canonical form."""
    if kind not in ("bordered", "punctured"):
        raise ValueError("kind must be bordered or punctured")
    if genus < 1:
        raise ValueError("genus must be positive")
    if genus > exhaustive_cap:
        raise GenusTooLarge("exhaustive enumeration is capped at genus %d" % exhaustive_cap)
    rows = matchings(genus, kind, threads)
    bordered = kind == "bordered"
    if not bordered:
        reps = {}
        for r in rows:
            key = tuple(int(v) for v in _kernels.min_rotation(r))
            reps.setdefault(key, r)
        rows = [reps[k] for k in sorted(reps)]
    graphs = {}
    for r in rows:
        g = canonical_graph(from_matching(r, bordered))
        graphs[canonical_form(g)] = g
    out = [graphs[k] for k in sorted(graphs)]
    if limit is not None:
        out = out[:limit]
    return out


def iter_graphs(task: EnumTask) -> Iterator[Fatgraph]:
    yield from enumerate_graphs(task.genus, task.kind, task.limit)


# -- random walks -----------------------------------------------------------------

@dataclass(frozen=True)
class WalkSpec:
    seed: int
    steps: int
    genus: int = 2
    start: Fatgraph | None = None


def start_graph(genus: int) -> Fatgraph:
    from .examples import ladder
    return ladder(genus)


def random_walk(spec: WalkSpec):
    """Yield ``(graph, move)`` pairs; ``graph`` is the state before ``move``."""
    rng = np.random.default_rng(spec.seed)
    g = spec.start if spec.start is not None else start_graph(spec.genus)
    for _ in range(spec.steps):
        ks = flippable_edges(g)
        mv = flip(g, ks[int(rng.integers(len(ks)))])
        yield g, mv
        g = mv.result


def random_graphs(genus: int, count: int, seed: int = 0, stride: int = 7) -> list:
    """``count`` states taken every ``stride`` steps of a seeded flip walk."""
    out = []
    spec = WalkSpec(seed, count * stride, genus)
    for i, (g, mv) in enumerate(random_walk(spec)):
        if i % stride == stride - 1:
            out.append(mv.result)
    return out
