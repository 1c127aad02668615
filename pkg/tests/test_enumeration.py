import os
import subprocess
import sys
from collections import deque

import numpy as np
import pytest

from fatgraph_xi import examples as X
from fatgraph_xi.enumeration import (GenusTooLarge, WalkSpec, enumerate_graphs, from_matching,
                                     matchings, random_graphs, random_walk)
from fatgraph_xi.fatgraph import canonical_form, flip, flippable_edges, remove_tail


def test_counts():
    assert len(enumerate_graphs(1)) == 1
    assert len(enumerate_graphs(2)) == 105
    assert len(enumerate_graphs(1, "punctured")) == 1
    assert len(enumerate_graphs(2, "punctured")) == 9


def test_flip_closure_oracle():
    # the flip graph is connected, so BFS from the ladder meets every class
    seen = {canonical_form(X.ladder(2))}
    queue = deque([X.ladder(2)])
    while queue:
        g = queue.popleft()
        for k in flippable_edges(g):
            h = flip(g, k).result
            key = canonical_form(h)
            if key not in seen:
                seen.add(key)
                queue.append(h)
    assert seen == {canonical_form(g) for g in enumerate_graphs(2)}


def test_punctured_are_tail_removals():
    got = {canonical_form(p) for p in enumerate_graphs(2, "punctured")}
    want = {canonical_form(remove_tail(g)) for g in enumerate_graphs(2)}
    assert got == want


def test_sorted_and_valid():
    gs = enumerate_graphs(2)
    keys = [canonical_form(g) for g in gs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for g in gs:
        assert g.problems() == [] and g.tail == 0


def test_thread_split_matches_serial():
    a = matchings(2, "bordered", threads=1)
    b = matchings(2, "bordered", threads=4)
    assert np.array_equal(a, b)
    assert enumerate_graphs(2, threads=1) == enumerate_graphs(2, threads=3)


def test_from_matching_is_one_face():
    for r in matchings(2)[:50]:
        g = from_matching(r, True)
        assert g.problems() == [] and g.genus == 2


def test_limit_and_guards():
    assert len(enumerate_graphs(2, limit=5)) == 5
    with pytest.raises(GenusTooLarge):
        enumerate_graphs(4)
    with pytest.raises(ValueError):
        enumerate_graphs(0)
    with pytest.raises(ValueError):
        enumerate_graphs(1, "closed")


def test_walk_reproducible():
    a = [mv.edge for _, mv in random_walk(WalkSpec(42, 50, 2))]
    b = [mv.edge for _, mv in random_walk(WalkSpec(42, 50, 2))]
    c = [mv.edge for _, mv in random_walk(WalkSpec(43, 50, 2))]
    assert a == b and a != c
    assert random_graphs(3, 5, seed=1) == random_graphs(3, 5, seed=1)


def test_walk_states_chain():
    prev = None
    for g, mv in random_walk(WalkSpec(1, 30, 3)):
        assert mv.source == g
        if prev is not None:
            assert g == prev
        prev = mv.result
        assert prev.genus == 3


def test_pure_python_path_agrees():
    code = ("from fatgraph_xi import _kernels, enumeration as E\n"
            "assert not _kernels.USE_NUMBA\n"
            "print(len(E.enumerate_graphs(1)), len(E.enumerate_graphs(2, 'punctured')),"
            " E.canonical_form(E.enumerate_graphs(2, 'punctured')[0]).hex())\n")
    env = dict(os.environ, FATGRAPH_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out[:2] == ["1", "9"]
    assert out[2] == canonical_form(enumerate_graphs(2, "punctured")[0]).hex()
