"""Compare the numba kernels with the interpreted fallback.

    python3 benchmarks/bench_kernels.py [--genus 2] [--repeat 3]

Each path runs in its own interpreter since the switch is read at import.
"""
import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from fatgraph_xi import _kernels
from fatgraph_xi.enumeration import enumerate_graphs
genus, repeat = int(sys.argv[1]), int(sys.argv[2])
t0 = time.perf_counter()
enumerate_graphs(1)                      # compile / warm up
warm = time.perf_counter() - t0
out = {"numba": _kernels.USE_NUMBA, "warmup": warm}
for kind in ("bordered", "punctured"):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        n = len(enumerate_graphs(genus, kind))
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    out[kind] = {"classes": n, "seconds": best}
print(json.dumps(out))
"""


def run(genus, repeat, no_numba):
    env = dict(os.environ)
    if no_numba:
        env["FATGRAPH_NO_NUMBA"] = "1"
    else:
        env.pop("FATGRAPH_NO_NUMBA", None)
    res = subprocess.run([sys.executable, "-c", CHILD, str(genus), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(args.genus, args.repeat, False)
    slow = run(args.genus, args.repeat, True)
    print("genus %d, best of %d" % (args.genus, args.repeat))
    print("%-10s %10s %10s %8s" % ("kind", "numba s", "python s", "speedup"))
    for kind in ("bordered", "punctured"):
        a, b = fast[kind], slow[kind]
        assert a["classes"] == b["classes"], "paths disagree"
        print("%-10s %10.3f %10.3f %7.0fx" % (kind, a["seconds"], b["seconds"],
                                            b["seconds"] / max(a["seconds"], 1e-9)))
    print("numba warm-up (first compile or cache load): %.2fs" % fast["warmup"])


if __name__ == "__main__":
    main()
