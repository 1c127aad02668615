"""Trivectors and the flip cocycles j, j' and m.

For a flip with frame ``(a, b, c, d)``::

    j  = mu(a) ^ mu(b) ^ mu(c)
    j' = (a.b) mu(c) + (b.c) mu(a) + (c.a) mu(b)      (= contraction of j)
    m  = mu(a) + mu(c)
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .fatgraph import (Fatgraph, FlipMove, flip, flippable_edges,
                       isomorphism)
from .homology import (DimensionMismatch, Marking, _guard, initial_marking, pair,
                       transport_marking)


class Trivector:
    """Sparse element of the third exterior power, keyed by ``i < j < k``."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs=None):
        self.rank = rank
        self.coeffs = {}
        for key, v in (coeffs or {}).items():
            self._add(key, int(v))

    def _add(self, key, v):
        i, j, k = key
        if not (0 <= i < j < k < self.rank):
            raise ValueError("bad index triple %r" % (key,))
        s = self.coeffs.get(key, 0) + v
        if s:
            if abs(s) >= 1 << 40:
                raise OverflowError("trivector coefficient overflow")
            self.coeffs[key] = s
        else:
            self.coeffs.pop(key, None)

    def __add__(self, other: "Trivector") -> "Trivector":
        if other.rank != self.rank:
            raise DimensionMismatch("ranks %d and %d" % (self.rank, other.rank))
        out = Trivector(self.rank, self.coeffs)
        for key, v in other.coeffs.items():
            out._add(key, v)
        return out

    def __neg__(self) -> "Trivector":
        return Trivector(self.rank, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: int) -> "Trivector":
        return Trivector(self.rank, {k: s * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, Trivector) and self.rank == other.rank
                and self.coeffs == other.coeffs)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return "Trivector(%d, %r)" % (self.rank, dict(sorted(self.coeffs.items())))

    def to_json(self):
        return [[list(k), v] for k, v in sorted(self.coeffs.items())]


def wedge3(x, y, z) -> Trivector:
    x, y, z = (np.asarray(v, dtype=np.int64) for v in (x, y, z))
    if not (x.shape == y.shape == z.shape) or x.ndim != 1:
        raise DimensionMismatch("wedge of vectors of different length")
    r = x.shape[0]
    nz = sorted(set(np.flatnonzero(x)) | set(np.flatnonzero(y)) | set(np.flatnonzero(z)))
    out = {}
    for i, j, k in combinations(nz, 3):
        M = np.array([[x[i], x[j], x[k]], [y[i], y[j], y[k]], [z[i], z[j], z[k]]])
        # 3x3 determinant by cofactors, exact in int64
        det = (M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
               - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
               + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0]))
        if det:
            out[(int(i), int(j), int(k))] = int(det)
    return Trivector(r, out)


def contraction(J, t: Trivector) -> np.ndarray:
    """``x^y^z -> (x.y) z + (y.z) x + (z.x) y`` extended linearly."""
    J = J.J if isinstance(J, Marking) else np.asarray(J)
    r = J.shape[0]
    if t.rank != r:
        raise DimensionMismatch("trivector rank %d, form rank %d" % (t.rank, r))
    out = np.zeros(r, dtype=np.int64)
    for (i, j, k), v in t.coeffs.items():
        out[k] += v * J[i, j]
        out[i] += v * J[j, k]
        out[j] += v * J[k, i]
    return _guard(out)


@dataclass(frozen=True, eq=False)
class CocycleValue:
    j: Trivector
    jprime: np.ndarray
    m: np.ndarray

    def __add__(self, other: "CocycleValue") -> "CocycleValue":
        return CocycleValue(self.j + other.j, self.jprime + other.jprime,
                            self.m + other.m)

    def __neg__(self):
        return CocycleValue(-self.j, -self.jprime, -self.m)

    def __eq__(self, other):
        return (self.j == other.j and np.array_equal(self.jprime, other.jprime)
                and np.array_equal(self.m, other.m))

    __hash__ = None

    def is_zero(self) -> bool:
        return self.j.is_zero() and not self.jprime.any() and not self.m.any()

    @classmethod
    def zero(cls, rank: int) -> "CocycleValue":
        z = np.zeros(rank, dtype=np.int64)
        return cls(Trivector(rank), z, z.copy())


def cocycle_values(mk: Marking, move: FlipMove) -> CocycleValue:
    a, b, c, _, _ = move.frame
    A, B, C = mk.mu[a], mk.mu[b], mk.mu[c]
    j = wedge3(A, B, C)
    jp = pair(mk, A, B) * C + pair(mk, B, C) * A + pair(mk, C, A) * B
    if not np.array_equal(jp, contraction(mk.J, j)):
        raise AssertionError("j' differs from the contraction of j")
    return CocycleValue(j, _guard(jp), _guard(A + C))


ValueFn = Callable[[Marking, FlipMove], CocycleValue]


class FlipStepError(ValueError):
    def __init__(self, step, cause):
        super().__init__("flip %d failed: %s" % (step, cause))
        self.step = step
        self.cause = cause


def evaluate_sequence(m0: Marking, edges: Iterable[int], values: ValueFn = cocycle_values):
    """Fold flips along ``edges``; returns ``(sums, graph, marking)``."""
    total = CocycleValue.zero(m0.rank)
    mk = m0
    for step, k in enumerate(edges):
        try:
            mv = flip(mk.graph, k)
        except ValueError as e:
            raise FlipStepError(step, e) from e
        total = total + values(mk, mv)
        mk = transport_marking(mk, mv)
    return total, mk.graph, mk


# -- relation configurations ---------------------------------------------------

def disjoint_pairs(graph: Fatgraph) -> list:
    ks = flippable_edges(graph)
    ends = {k: {graph.head(2 * k), graph.head(2 * k + 1)} for k in ks}
    return [(e, f) for e, f in combinations(ks, 2) if not ends[e] & ends[f]]


def pentagon_pairs(graph: Fatgraph) -> list:
    """Ordered pairs of flippable edges meeting in exactly one vertex."""
    ks = flippable_edges(graph)
    ends = {k: {graph.head(2 * k), graph.head(2 * k + 1)} for k in ks}
    return [(e, f) for e in ks for f in ks
            if e != f and len(ends[e] & ends[f]) == 1]


def markings_match(m1: Marking, m2: Marking) -> bool:
    """Is there an isomorphism of graphs carrying one marking to the other?"""
    phi = isomorphism(m1.graph, m2.graph)
    if phi is None:
        return False
    return all(np.array_equal(m1.mu[d], m2.mu[phi[d]]) for d in range(len(phi)))


@dataclass
class RelationReport:
    involutions: int = 0
    commutations: int = 0
    pentagons: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    @property
    def ok(self) -> bool:
        return not self.failures


def check_involution(mk: Marking, k: int, values: ValueFn = cocycle_values):
    s, g, m2 = evaluate_sequence(mk, [k, k], values)
    return s.is_zero() and g == mk.graph and m2 == mk


def check_commutation(mk: Marking, e: int, f: int, values: ValueFn = cocycle_values):
    s1, g1, m1 = evaluate_sequence(mk, [e, f], values)
    s2, g2, m2 = evaluate_sequence(mk, [f, e], values)
    return g1 == g2 and s1 == s2 and m1 == m2


def check_pentagon(mk: Marking, e: int, f: int, values: ValueFn = cocycle_values):
    s, _, m5 = evaluate_sequence(mk, [e, f, e, f, e], values)
    return s.is_zero() and markings_match(mk, m5)


def verify_relations(graph: Fatgraph, budget: int = 200, seed: int = 0,
                     values: ValueFn = cocycle_values, marking: Marking | None = None,
                     ) -> RelationReport:
    """Sample involutions, commuting squares and pentagons on ``graph``.

    Each family is capped at ``budget`` configurations; when a family is
    larger, a seeded sample is taken.
    """
    rng = np.random.default_rng(seed)
    mk = marking if marking is not None else initial_marking(graph)
    rep = RelationReport()

    def pick(items):
        if len(items) <= budget:
            return items
        idx = sorted(rng.choice(len(items), size=budget, replace=False))
        return [items[i] for i in idx]

    for k in pick(flippable_edges(graph)):
        rep.involutions += 1
        if not check_involution(mk, k, values):
            rep.failures.append(("involution", k))
    for e, f in pick(disjoint_pairs(graph)):
        rep.commutations += 1
        if not check_commutation(mk, e, f, values):
            rep.failures.append(("commutation", e, f))
    for e, f in pick(pentagon_pairs(graph)):
        rep.pentagons += 1
        if not check_pentagon(mk, e, f, values):
            rep.failures.append(("pentagon", e, f))
    return rep
