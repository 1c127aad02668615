"""Plain-text ``fatgraph v1`` format.

    fatgraph v1 bordered
    # incoming darts counterclockwise; edge k has darts 2k, 2k+1
    v0: 0 3 9
    v1: 1
    tail: 0
"""
from __future__ import annotations

from pathlib import Path

from .fatgraph import Fatgraph, MalformedPermutation


class FormatError(MalformedPermutation):
    pass


def dumps(graph: Fatgraph) -> str:
    lines = ["fatgraph v1 %s" % graph.kind]
    for k, cyc in enumerate(graph.vertices):
        lines.append("v%d: %s" % (k, " ".join(str(d) for d in cyc)))
    if graph.bordered:
        lines.append("tail: %d" % graph.tail)
    return "\n".join(lines) + "\n"


def loads(text: str, check: bool = False) -> Fatgraph:
    kind = None
    cycles = []
    tail = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            parts = line.split()
            if len(parts) != 3 or parts[:2] != ["fatgraph", "v1"] \
                    or parts[2] not in ("bordered", "punctured"):
                raise FormatError("line %d: expected 'fatgraph v1 bordered|punctured'" % lineno)
            kind = parts[2]
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise FormatError("line %d: missing ':'" % lineno)
        key = key.strip()
        try:
            vals = [int(t) for t in rest.split()]
        except ValueError:
            raise FormatError("line %d: non-integer dart" % lineno) from None
        if key == "tail":
            if len(vals) != 1 or tail is not None:
                raise FormatError("line %d: bad tail line" % lineno)
            tail = vals[0]
        elif key.startswith("v") and key[1:].isdigit():
            if not vals:
                raise FormatError("line %d: empty vertex" % lineno)
            cycles.append(vals)
        else:
            raise FormatError("line %d: unknown key %r" % (lineno, key))
    if kind is None:
        raise FormatError("missing header")
    if (kind == "bordered") != (tail is not None):
        raise FormatError("%s graph %s a tail line" % (
            kind, "needs" if kind == "bordered" else "must not have"))
    return Fatgraph.from_cycles(cycles, tail, check=check)


def load(path, check: bool = False) -> Fatgraph:
    return loads(Path(path).read_text(), check=check)


def dump(graph: Fatgraph, path) -> None:
    Path(path).write_text(dumps(graph))
