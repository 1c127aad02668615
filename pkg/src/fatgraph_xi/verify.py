"""Batch verification suites behind ``fatgraph verify``.

Every suite runs over a pool of graphs (all classes of a genus, or states of
a seeded flip walk) and records failures together with the offending graph
so that a run can be replayed offline.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import io
from .cocycles import verify_relations
from .enumeration import enumerate_graphs, random_graphs, random_walk, thread_count, WalkSpec
from .cocycles import markings_match
from .fatgraph import (Fatgraph, attach_tail, find_odd_edge_cycle, flip,
                       flippable_edges, greedy_tree, is_chord_diagram, remove_tail,
                       type_counts)
from .homology import (initial_marking, is_primitive, marking_problems,
                       pair_with_cycle, transport_marking, walk_marking)
from .spin import (extend_form, q_G, q_bar, q_membership, q_wind, spin_report,
                   transport_form)
from .xi import (chord_pairings, check_balanced_criterion, check_delta, check_gluing,
                 check_punctured_independence, check_tail_slide, tail_slide_orbit,
                 xi, xi_mod2_direct)

SUITES = ("invariants", "relations", "delta-xi", "gluing", "tailslide", "spin",
          "balanced", "primitivity")
DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, graph: Fatgraph, detail=""):
        self.failures.append({"check": check, "graph": io.dumps(graph),
                              "detail": str(detail)})

    def merge(self, other: "SuiteResult"):
        self.checked += other.checked
        self.failures += other.failures
        for k, v in other.stats.items():
            self.stats[k] = self.stats.get(k, 0) + v
        self.notes += other.notes

    def to_json(self):
        return {"suite": self.suite, "checked": self.checked, "ok": self.ok,
                "failures": self.failures, "stats": dict(sorted(self.stats.items())),
                "notes": self.notes}


@dataclass(frozen=True)
class Config:
    genus: int = 2
    exhaustive: bool = False
    seed: int = DEFAULT_SEED
    samples: int = 20
    steps: int = 60


def graph_pool(cfg: Config, kind: str = "bordered") -> list:
    if cfg.exhaustive:
        return enumerate_graphs(cfg.genus, kind)
    gs = random_graphs(cfg.genus, cfg.samples, cfg.seed)
    if kind == "punctured":
        gs = [remove_tail(g) for g in gs]
    return gs


def _per_graph(fn, graphs, name):
    """Run ``fn(graph) -> SuiteResult`` over graphs; merge in input order."""
    threads = min(thread_count(), max(1, len(graphs)))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(fn, graphs))
    else:
        parts = [fn(g) for g in graphs]
    out = SuiteResult(name)
    for p in parts:
        out.merge(p)
    return out


# -- suites -----------------------------------------------------------------------

def suite_invariants(cfg: Config) -> SuiteResult:
    def one(g):
        r = SuiteResult("invariants")
        m = initial_marking(g)
        r.checked += 1
        for p in marking_problems(m):
            r.fail("marking", g, p)
        gen = g.genus
        if type_counts(g) != (2 * gen - 1, 2 * gen):
            r.fail("type-counts", g, type_counts(g))
        res = xi(g, m)
        if not np.array_equal(res.xi_mod2, xi_mod2_direct(g, m)):
            r.fail("mod2-formula", g)
        if not res.xi_mod2.any():
            r.fail("mod2-nonzero", g)
        cyc = find_odd_edge_cycle(g)
        if len(cyc) % 2 != 1 or pair_with_cycle(m, res.xi, cyc) % 2 != 1:
            r.fail("odd-cycle", g, cyc)
        return r
    return _per_graph(one, graph_pool(cfg), "invariants")


def suite_relations(cfg: Config, budget: int = 1000) -> SuiteResult:
    def one(g):
        r = SuiteResult("relations")
        rep = verify_relations(g, budget=budget, seed=cfg.seed)
        r.checked += 1
        r.stats = {"involutions": rep.involutions, "commutations": rep.commutations,
                   "pentagons": rep.pentagons}
        for f in rep.failures:
            r.fail(f[0], g, f[1:])
        return r
    out = _per_graph(one, graph_pool(cfg), "relations")
    # marked states along a walk: the same graphs with other markings
    start = graph_pool(cfg)[0]
    m = initial_marking(start)
    for i, (g, mv) in enumerate(random_walk(WalkSpec(cfg.seed, cfg.steps, cfg.genus, start))):
        m = walk_marking(m, mv)
        rep = verify_relations(mv.result, budget=budget, seed=cfg.seed + i, marking=m)
        out.checked += 1
        out.stats["involutions"] += rep.involutions
        out.stats["commutations"] += rep.commutations
        out.stats["pentagons"] += rep.pentagons
        for f in rep.failures:
            out.fail(f[0], mv.result, ("walk step %d" % i,) + f[1:])
    return out


def suite_delta(cfg: Config) -> SuiteResult:
    def one(g):
        r = SuiteResult("delta-xi")
        m = initial_marking(g)
        for k in flippable_edges(g):
            r.checked += 1
            if not check_delta(flip(g, k), m):
                r.fail("delta-xi", g, "edge %d" % k)
        return r
    out = _per_graph(one, graph_pool(cfg), "delta-xi")
    # a walk with a transported marking exercises non-initial markings
    start = graph_pool(cfg)[0]
    m = initial_marking(start)
    for i, (g, mv) in enumerate(random_walk(WalkSpec(cfg.seed, cfg.steps, cfg.genus, start))):
        out.checked += 1
        if not check_delta(mv, m):
            out.fail("delta-xi-walk", g, "step %d edge %d" % (i, mv.edge))
        m = walk_marking(m, mv)
    return out


def suite_gluing(cfg: Config, triples: int = 50) -> SuiteResult:
    rng = np.random.default_rng(cfg.seed)
    hosts = graph_pool(cfg)
    guests = enumerate_graphs(1) + (enumerate_graphs(2) if cfg.genus >= 2 else [])
    out = SuiteResult("gluing")
    n = max(triples, len(hosts)) if cfg.exhaustive else triples
    for i in range(n):
        h = hosts[i % len(hosts)]
        gst = guests[int(rng.integers(len(guests)))]
        d = int(rng.integers(h.ndarts))
        out.checked += 1
        if not check_gluing(h, d, gst):
            out.fail("gluing", h, "dart %d guest %s" % (d, io.dumps(gst).replace("\n", "; ")))
    return out


def suite_tailslide(cfg: Config) -> SuiteResult:
    def one(g):
        r = SuiteResult("tailslide")
        r.checked += 1
        if not check_tail_slide(g):
            r.fail("tail-slide", g)
        return r
    out = _per_graph(one, graph_pool(cfg), "tailslide")
    for p in graph_pool(cfg, "punctured"):
        lift = attach_tail(p, 0)
        total, m0, m1 = tail_slide_orbit(lift, p.ndarts)
        out.checked += 1
        out.stats["orbits"] = out.stats.get("orbits", 0) + 1
        if total.any() or not markings_match(m0, m1):
            out.fail("orbit-closure", lift, total.tolist())
    return out


def suite_spin(cfg: Config) -> SuiteResult:
    def one(g):
        r = SuiteResult("spin")
        m = initial_marking(g)
        rep = spin_report(g, m)
        r.checked += 1
        if not rep.members:
            r.fail("membership", g)
        if not rep.difference_is_xi:
            r.fail("difference", g)
        if not rep.distinct:
            r.fail("distinct", g)
        if not rep.lambda_odd:
            r.fail("lambda-odd", g)
        if rep.q_size != 4 ** g.genus:
            r.fail("q-size", g, rep.q_size)
        if not rep.members:
            return r
        forms = [q_G(g), q_bar(g), q_wind(g)]
        quads = [extend_form(g, m, f) for f in forms]
        for k in flippable_edges(g):
            mv = flip(g, k)
            m2 = transport_marking(m, mv)
            for f, q in zip(forms, quads):
                r.checked += 1
                f2 = transport_form(mv, f)
                if not q_membership(mv.result, f2) or extend_form(mv.result, m2, f2) != q:
                    r.fail("transport", g, "edge %d form %s" % (k, f.tag))
        return r
    return _per_graph(one, graph_pool(cfg), "spin")


def suite_balanced(cfg: Config) -> SuiteResult:
    def one(p):
        r = SuiteResult("balanced")
        r.checked += 1
        if not check_balanced_criterion(p):
            r.fail("balanced", p)
        if not check_punctured_independence(p):
            r.fail("independence", p)
        return r
    return _per_graph(one, graph_pool(cfg, "punctured"), "balanced")


def hypothesis_flip_edge(g: Fatgraph):
    """For a graph whose first ``4g-1`` darts are preferred but not the next,
    the tree edge not among the first ``4g-2`` darts; else None."""
    gen = g.genus
    order = g.order
    if not all(g.preferred(d) for d in order[:4 * gen - 1]) or g.preferred(order[4 * gen - 1]):
        return None
    first = {d >> 1 for d in order[:4 * gen - 2]}
    rest = [k for k in greedy_tree(g) if k not in first]
    return rest[0] if len(rest) == 1 else None


def suite_primitivity(cfg: Config) -> SuiteResult:
    asserting = cfg.genus <= 2

    def one(g):
        r = SuiteResult("primitivity")
        m = initial_marking(g)
        x = xi(g, m).xi
        r.checked += 1
        if not is_primitive(x):
            if asserting:
                r.fail("primitive", g, x.tolist())
            else:
                r.notes.append({"non-primitive": io.dumps(g), "xi": x.tolist()})
        if is_chord_diagram(g):
            r.stats["chord_diagrams"] = 1
            cp = chord_pairings(g, m)
            for i, row in enumerate(cp["rows"], 1):
                want = [-1 if j == i else 0 for j in range(len(cp["chords"]))]
                if row["pairings"] != want or row["cycle_pairings"] != want \
                        or not np.array_equal(row["class"], row["cycle_class"]):
                    r.fail("chord-delta", g, row["chord"])
            if cp["xi_f0"] != -1:
                r.fail("chord-xi-f0", g, cp["xi_f0"])
            if not is_primitive(x):
                r.fail("chord-primitive", g, x.tolist())
        h = hypothesis_flip_edge(g)
        if h is not None:
            r.stats["one_flip_neighbours"] = 1
            if not is_chord_diagram(flip(g, h).result):
                r.fail("neighbour-flip", g, "edge %d" % h)
            if not is_primitive(x):
                r.fail("neighbour-primitive", g, x.tolist())
        return r
    return _per_graph(one, graph_pool(cfg), "primitivity")


RUNNERS = {
    "invariants": suite_invariants,
    "relations": suite_relations,
    "delta-xi": suite_delta,
    "gluing": suite_gluing,
    "tailslide": suite_tailslide,
    "spin": suite_spin,
    "balanced": suite_balanced,
    "primitivity": suite_primitivity,
}


def run(suite: str, cfg: Config) -> list:
    names = SUITES if suite == "all" else (suite,)
    return [RUNNERS[n](cfg) for n in names]
