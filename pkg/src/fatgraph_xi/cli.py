"""Command-line front end: ``fatgraph <command> ...``.

Exit status is 0 when every requested check passes, 1 on a failed check or
an invalid graph, 2 on usage errors.  ``--json`` prints one sorted-key JSON
document.  Failing ``verify`` runs write the first counterexample as a
fatgraph v1 file and print the seed that reproduces it.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .cocycles import CocycleValue, FlipStepError, cocycle_values, evaluate_sequence
from .enumeration import GenusTooLarge, WalkSpec, enumerate_graphs, random_walk, start_graph
from .fatgraph import (FatgraphError, attach_tail, canonical_form, canonical_graph,
                       classify_vertices, corners, glue, greedy_tree, is_balanced,
                       is_chord_diagram, non_tree_edges, tail_slide, validate, flip)
from .homology import initial_marking, is_primitive, transport_marking, walk_marking
from .spin import extend_form, form_difference, q_G, q_bar, q_wind, spin_report
from .verify import DEFAULT_SEED, SUITES, Config, run
from .xi import check_delta, check_gluing, delta_xi, punctured_pairings, xi, xi_punctured


class Failure(Exception):
    """A check failed; the message is reported and the exit status is 1."""


def short_hash(graph) -> str:
    return hashlib.sha256(canonical_form(graph)).hexdigest()[:12]


def vec(x) -> str:
    return "[" + ",".join(str(int(v)) for v in x) + "]"


def emit(args, data: dict, lines: list):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=1))
    else:
        for ln in lines:
            print(ln)


def load_graph(path):
    try:
        return io.load(path)
    except OSError as e:
        raise UsageError(str(e)) from None


class UsageError(Exception):
    pass


def valid_graph(path):
    g = load_graph(path)
    rep = validate(g)
    if not rep.ok:
        raise Failure("%s: %s" % (rep.error, rep.problem))
    return g


# -- commands -----------------------------------------------------------------

def cmd_validate(args):
    g = load_graph(args.file)
    rep = validate(g)
    data = {"ok": rep.ok, "kind": rep.kind, "genus": rep.genus,
            "vertices": rep.nvertices, "edges": rep.nedges,
            "error": rep.error, "problem": rep.problem}
    if rep.ok:
        emit(args, data, ["valid %s spine, genus %d, %d vertices, %d edges"
                          % (rep.kind, rep.genus, rep.nvertices, rep.nedges)])
        return 0
    emit(args, data, ["invalid: %s: %s" % (rep.error, rep.problem)])
    return 1


def cmd_info(args):
    g = valid_graph(args.file)
    data = {"kind": g.kind, "genus": g.genus, "vertices": [list(c) for c in g.vertices],
            "order": list(g.order), "hash": short_hash(g), "corners": len(corners(g))}
    lines = ["%s spine, genus %d, hash %s" % (g.kind, g.genus, data["hash"]),
             "boundary order: %s" % " ".join(map(str, g.order))]
    if g.bordered:
        fr = classify_vertices(g)
        data["types"] = [[f.vertex, list(f.darts), f.type] for f in fr]
        data["tree"] = sorted(greedy_tree(g))
        data["non_tree"] = non_tree_edges(g)
        data["chord_diagram"] = is_chord_diagram(g)
        lines += ["v%d: frame %s type %d" % (f.vertex, list(f.darts), f.type) for f in fr]
        lines.append("greedy tree edges: %s" % data["tree"])
        lines.append("chord diagram: %s" % data["chord_diagram"])
    else:
        data["balanced"] = is_balanced(g)
        lines.append("balanced: %s" % data["balanced"])
    emit(args, data, lines)
    return 0


def cmd_xi(args):
    g = valid_graph(args.file)
    if not g.bordered:
        c = canonical_graph(g)
        d = 0 if args.dart is None else args.dart
        x, _ = xi_punctured(c, d)
        pv = punctured_pairings(c, d)
        data = {"kind": "punctured", "dart": d, "xi": x.tolist(),
                "xi_mod2": (x % 2).tolist(), "pairings": list(pv)}
        lines = ["xi=%s  (lift at canonical dart %d)" % (vec(x), d),
                 "pairings with cycle basis: %s" % vec(pv)]
        if args.mod2:
            lines.append("xi_mod2=%s" % vec(x % 2))
        emit(args, data, lines)
        return 0
    m = initial_marking(g)
    r = xi(g, m)
    data = r.to_json()
    data["primitive"] = is_primitive(r.xi)
    data["basis"] = list(m.basis)
    lines = ["xi=%s" % vec(r.xi)]
    if args.mod2:
        lines.append("xi_mod2=%s" % vec(r.xi_mod2))
    lines.append("basis darts: %s" % list(m.basis))
    for v, e, f, c in r.per_vertex:
        lines.append("  v%d: mu(%d) - mu(%d) = %s" % (v, e, f, vec(c)))
    emit(args, data, lines)
    return 0


def _cocycle_json(v: CocycleValue):
    return {"j": v.j.to_json(), "jprime": v.jprime.tolist(), "m": v.m.tolist()}


def cmd_cocycle(args):
    g = canonical_graph(valid_graph(args.file))
    edges = [int(t) for t in args.flips.split()] if args.flips else []
    m = initial_marking(g)
    try:
        s, final, _ = evaluate_sequence(m, edges)
    except FlipStepError as e:
        raise Failure(str(e)) from None
    data = dict(_cocycle_json(s), flips=edges, final=io.dumps(final),
                closed=bool(final == g))
    emit(args, data, ["flips: %s" % edges, "sum j = %s" % s.j,
                      "sum j' = %s" % vec(s.jprime), "sum m = %s" % vec(s.m)])
    return 0


def cmd_flip(args):
    g = canonical_graph(valid_graph(args.file))
    try:
        mv = flip(g, args.edge)
    except FatgraphError as e:
        raise Failure("%s: %s" % (type(e).__name__, e)) from None
    m = initial_marking(g)
    v = cocycle_values(m, mv)
    lhs, rhs = delta_xi(mv, m)
    ok = bool(np.array_equal(lhs, rhs))
    if args.out:
        io.dump(mv.result, args.out)
    data = dict(_cocycle_json(v), frame=list(mv.frame), result=io.dumps(mv.result),
                delta_xi=lhs.tolist(), two_jprime_minus_m=rhs.tolist(), ok=ok)
    emit(args, data, ["frame a,b,c,d,e = %s" % list(mv.frame),
                      "j = %s, j' = %s, m = %s" % (v.j, vec(v.jprime), vec(v.m)),
                      "xi(G') - xi(G) = %s, 2j' - m = %s: %s"
                      % (vec(lhs), vec(rhs), "ok" if ok else "FAIL"),
                      io.dumps(mv.result).rstrip()])
    return 0 if ok else 1


def cmd_walk(args):
    g = canonical_graph(valid_graph(args.file)) if args.file else start_graph(args.genus)
    if not g.bordered:
        raise UsageError("walks need a bordered start graph")
    m = initial_marking(g)
    bad = None
    seen = set()
    last = g
    for i, (cur, mv) in enumerate(random_walk(WalkSpec(args.seed, args.steps, g.genus, g))):
        if bad is None and not check_delta(mv, m):
            bad = (i, cur, mv.edge)
        m = walk_marking(m, mv)
        last = mv.result
        seen.add(canonical_form(last))
    if args.out:
        io.dump(last, args.out)
    data = {"seed": args.seed, "steps": args.steps, "genus": g.genus,
            "classes_visited": len(seen), "final": short_hash(last), "ok": bad is None}
    emit(args, data, ["walk of %d flips (seed %d): %d classes visited, final %s"
                      % (args.steps, args.seed, len(seen), data["final"])])
    if bad is not None:
        path = Path("counterexample-walk.fg")
        io.dump(bad[1], path)
        print("delta-xi failed at step %d (edge %d); seed %d; graph in %s"
              % (bad[0], bad[2], args.seed, path), file=sys.stderr)
        return 1
    return 0


def cmd_enumerate(args):
    try:
        gs = enumerate_graphs(args.genus, args.kind)
    except GenusTooLarge as e:
        raise UsageError(str(e)) from None
    names = [short_hash(g) for g in gs]
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for n, g in zip(names, gs):
            io.dump(g, d / ("%s.fg" % n))
    data = {"genus": args.genus, "kind": args.kind, "count": len(gs), "classes": names}
    emit(args, data, ["%d %s classes at genus %d" % (len(gs), args.kind, args.genus)])
    return 0


def cmd_spin(args):
    g = valid_graph(args.file)
    if not g.bordered:
        raise UsageError("spin forms need a bordered spine")
    m = initial_marking(g)
    forms = {"q_G": q_G(g), "q_bar": q_bar(g), "q_wind": q_wind(g)}
    rep = spin_report(g, m)
    quads = {k: extend_form(g, m, f).to_json() for k, f in forms.items()}
    diff = form_difference(g, m, forms["q_G"], forms["q_bar"])
    ok = rep.members and rep.difference_is_xi and rep.distinct and rep.lambda_odd
    data = {"forms": {k: f.to_json() for k, f in forms.items()}, "quadratic": quads,
            "difference": diff.tolist(), "q_size": rep.q_size, "ok": bool(ok)}
    lines = ["%s: %s" % (k, " ".join(f.to_json())) for k, f in forms.items()]
    lines += ["%s on basis: %s" % (k, vec(q["basis"])) for k, q in quads.items()]
    lines.append("q_G - q_bar = %s (xi mod 2: %s)" % (vec(diff), "yes" if rep.difference_is_xi else "NO"))
    lines.append("|Q(G)| = %d" % rep.q_size)
    emit(args, data, lines)
    return 0 if ok else 1


def cmd_glue(args):
    host = valid_graph(args.file)
    guest = valid_graph(args.guest)
    res, _, _, _ = glue(host, args.dart, guest)
    ok = check_gluing(host, args.dart, guest)
    if args.out:
        io.dump(res, args.out)
    data = {"genus": res.genus, "ok": ok, "result": io.dumps(res),
            "xi": xi(res).xi.tolist()}
    emit(args, data, ["glued spine of genus %d; gluing formula %s" % (res.genus, "ok" if ok else "FAILS"),
                      io.dumps(res).rstrip()])
    return 0 if ok else 1


def cmd_tailslide(args):
    g = valid_graph(args.file)
    if not g.bordered:
        g = attach_tail(g, 0)
    m = initial_marking(g)
    rows = []
    ok = True
    for i in range(args.steps):
        mv, c = tail_slide(g)
        m2 = transport_marking(m, mv)
        d = xi(mv.result, m2).xi - xi(g, m).xi
        good = bool(np.array_equal(d, m.mu[c]))
        ok &= good
        rows.append({"step": i, "edge": mv.edge, "c": c, "mu_c": m.mu[c].tolist(),
                     "ok": good})
        g, m = mv.result, m2
    if args.out:
        io.dump(g, args.out)
    emit(args, {"slides": rows, "ok": ok},
         ["slide %d: edge %d, c=%d, xi grows by mu(c)=%s %s"
          % (r["step"], r["edge"], r["c"], vec(r["mu_c"]), "ok" if r["ok"] else "FAIL")
          for r in rows])
    return 0 if ok else 1


def cmd_verify(args):
    if args.genus < 1 or args.genus > 3:
        raise UsageError("verification runs at genus 1..3")
    if args.exhaustive and args.genus > 2:
        # genus-3 classes are far too many for a desk run
        raise UsageError("exhaustive verification is limited to genus <= 2")
    cfg = Config(genus=args.genus, exhaustive=args.exhaustive, seed=args.seed,
                 samples=args.samples, steps=args.steps)
    results = run(args.suite, cfg)
    nfail = sum(len(r.failures) for r in results)
    classes = None
    if args.exhaustive:
        classes = len(enumerate_graphs(args.genus))
    data = {"suite": args.suite, "genus": args.genus, "exhaustive": args.exhaustive,
            "seed": args.seed, "classes": classes, "failures": nfail,
            "results": [r.to_json() for r in results]}
    lines = [("%-12s checked %6d  failures %d  %s" % (
                 r.suite, r.checked, len(r.failures),
                 " ".join("%s=%d" % kv for kv in sorted(r.stats.items())))).rstrip()
             for r in results]
    if classes is not None:
        lines.append("%d classes, %d failures" % (classes, nfail))
    else:
        lines.append("%d failures" % nfail)
    for r in results:
        for n in r.notes:
            lines.append("note: %s" % json.dumps(n, sort_keys=True))
    if nfail:
        first = next(f for r in results for f in r.failures)
        p = Path(args.out) if args.out else Path(".")
        p.mkdir(parents=True, exist_ok=True)
        path = p / ("counterexample-%s.fg" % first["check"])
        path.write_text(first["graph"])
        lines.append("counterexample written to %s (seed %d)" % (path, args.seed))
        data["counterexample"] = str(path)
    emit(args, data, lines)
    return 1 if nfail else 0


# -- argument parsing -------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="fatgraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file=True, file_required=True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("--file", required=file_required, help="fatgraph v1 file")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the spine conditions")
    add("info", cmd_info, "boundary order, vertex types, tree")
    sp = add("xi", cmd_xi, "the invariant and its per-vertex terms")
    sp.add_argument("--mod2", action="store_true")
    sp.add_argument("--dart", type=int, help="lift dart for punctured spines (canonical labels)")
    sp = add("cocycle", cmd_cocycle, "cocycle sums along a flip sequence")
    sp.add_argument("--flips", default="", help="edge ids of the canonical form, space separated")
    sp = add("flip", cmd_flip, "one flip with its frame and cocycle values")
    sp.add_argument("--edge", type=int, required=True, help="edge id of the canonical form")
    sp.add_argument("--out")
    sp = add("walk", cmd_walk, "seeded random flip walk", file_required=False)
    sp.add_argument("--genus", type=int, default=2)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out")
    sp = add("enumerate", cmd_enumerate, "all isomorphism classes", file=False)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--kind", choices=("bordered", "punctured"), default="bordered")
    sp.add_argument("--out", help="directory for one file per class")
    add("spin", cmd_spin, "the three quadratic forms")
    sp = add("verify", cmd_verify, "batch verification suites", file=False)
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--genus", type=int, default=2)
    sp.add_argument("--exhaustive", action="store_true", help="all classes instead of walk samples")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--steps", type=int, default=60, help="walk length for walk-based checks")
    sp.add_argument("--samples", type=int, default=20, help="sampled graphs when not exhaustive")
    sp.add_argument("--out", help="directory for counterexample files")
    sp = add("glue", cmd_glue, "glue a guest spine into a host dart")
    sp.add_argument("--guest", required=True)
    sp.add_argument("--dart", type=int, required=True)
    sp.add_argument("--out")
    sp = add("tailslide", cmd_tailslide, "repeated tail slides")
    sp.add_argument("--steps", type=int, default=1)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print("fatgraph: %s" % e, file=sys.stderr)
        return 2
    except Failure as e:
        print("fatgraph: %s" % e, file=sys.stderr)
        return 1
    except FatgraphError as e:
        print("fatgraph: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
