"""Hot inner loops over dart arrays.

Every kernel is written once as plain Python over integer numpy arrays and
compiled with ``numba.njit`` when numba is importable.  Setting the
environment variable ``FATGRAPH_NO_NUMBA=1`` (before import) selects the
interpreted path; both paths must return identical results.
"""
import os

import numpy as np

USE_NUMBA = os.environ.get("FATGRAPH_NO_NUMBA", "") in ("", "0")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is optional
        USE_NUMBA = False

if USE_NUMBA:
    jit = numba.njit(cache=True, nogil=True)
else:
    def jit(func):
        return func


@jit
def face_cycles(sigma):
    """Label every dart by its boundary cycle under ``d -> sigma[d] ^ 1``.

    Returns ``(label, ncycles)``.
    """
    n = sigma.shape[0]
    label = np.full(n, -1, dtype=np.int64)
    k = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        d = s
        while label[d] < 0:
            label[d] = k
            d = sigma[d] ^ 1
        k += 1
    return label, k


@jit
def boundary_walk(sigma, start):
    """Darts in boundary order from ``start``; -1 padded if the walk closes early."""
    n = sigma.shape[0]
    order = np.full(n, -1, dtype=np.int64)
    d = start
    for i in range(n):
        order[i] = d
        d = sigma[d] ^ 1
        if d == start:
            break
    return order


@jit
def walk_code(sigma, start):
    """Edge-renumbered rotation data of the walk anchored at ``start``.

    Edges are renumbered by first appearance along the walk (the earlier dart
    gets ``2k``, the later ``2k + 1``).  The result lists, in new labels,
    ``sigma`` of every new dart, which determines the anchored graph.
    """
    n = sigma.shape[0]
    relabel = np.full(n, -1, dtype=np.int64)
    d = start
    k = 0
    for i in range(n):
        if relabel[d] < 0:
            relabel[d] = 2 * k
            relabel[d ^ 1] = 2 * k + 1
            k += 1
        d = sigma[d] ^ 1
    code = np.empty(n, dtype=np.int64)
    for old in range(n):
        code[relabel[old]] = relabel[sigma[old]]
    return code


@jit
def _sigma_pos(rev, x, n):
    # rotation in boundary-position labels: sigma(x) = rev[x + 1]
    return rev[(x + 1) % n]


@jit
def _chain_ok(rev, x, n, bordered):
    y1 = _sigma_pos(rev, x, n)
    if y1 < 0:
        return True
    if y1 == x:
        return bordered and x == n - 1
    y2 = _sigma_pos(rev, y1, n)
    if y2 < 0:
        return True
    if y2 == x:
        return False
    y3 = _sigma_pos(rev, y2, n)
    if y3 < 0:
        return True
    return y3 == x


@jit
def _links_ok(rev, p, n, bordered):
    # the link s -> sigma(s) with s = p - 1 was just defined; test every
    # length-3 chain through it
    s = (p - 1) % n
    for _ in range(3):
        if not _chain_ok(rev, s, n, bordered):
            return False
        r = rev[s]
        if r < 0:
            break
        s = (r - 1) % n
    return True


@jit
def search_matchings(n, bordered, first_partner, out):
    """Backtracking search over one-face trivalent rotation systems.

    Darts are labelled by boundary position so the face permutation is the
    shift ``x -> x + 1``; a graph is then a fixed-point-free involution ``rev``
    (a chord matching) with ``rev[x + 1]`` of cycle type 3^k (plus the
    univalent fixed point ``n - 1`` when ``bordered``).  Bordered searches pin
    ``rev[0] = n - 1``.  ``first_partner >= 0`` restricts the partner of the
    first free position, which lets callers split the tree across workers.

    Solutions are written as rows of ``out``; the return value is the number
    found, which may exceed ``out.shape[0]`` (caller retries with more room).
    """
    rev = np.full(n, -1, dtype=np.int64)
    if bordered:
        rev[0] = n - 1
        rev[n - 1] = 0
    stack_p = np.empty(n // 2 + 1, dtype=np.int64)
    stack_q = np.empty(n // 2 + 1, dtype=np.int64)
    depth = 0
    count = 0

    p = 0
    while p < n and rev[p] >= 0:
        p += 1
    root = p
    cand = p + 1
    while True:
        if p >= n:
            ok = True
            for x in range(n):
                if not _chain_ok(rev, x, n, bordered):
                    ok = False
                    break
            if ok:
                if count < out.shape[0]:
                    for x in range(n):
                        out[count, x] = rev[x]
                count += 1
            # backtrack
            if depth == 0:
                break
            depth -= 1
            p = stack_p[depth]
            q = stack_q[depth]
            rev[p] = -1
            rev[q] = -1
            cand = q + 1
            continue

        placed = False
        q = cand
        while q < n:
            if rev[q] < 0 and (p != root or first_partner < 0 or q == first_partner):
                rev[p] = q
                rev[q] = p
                if _links_ok(rev, p, n, bordered) and _links_ok(rev, q, n, bordered):
                    placed = True
                    break
                rev[p] = -1
                rev[q] = -1
            q += 1
        if placed:
            stack_p[depth] = p
            stack_q[depth] = q
            depth += 1
            nxt = p + 1
            while nxt < n and rev[nxt] >= 0:
                nxt += 1
            p = nxt
            cand = p + 1
            continue
        if depth == 0:
            break
        depth -= 1
        p = stack_p[depth]
        q = stack_q[depth]
        rev[p] = -1
        rev[q] = -1
        cand = q + 1
    return count


@jit
def min_rotation(rev):
    """Lexicographically least rotation of a cyclic chord matching."""
    n = rev.shape[0]
    best = rev.copy()
    cur = np.empty(n, dtype=np.int64)
    for r in range(1, n):
        for x in range(n):
            cur[x] = (rev[(x + r) % n] - r) % n
        for x in range(n):
            if cur[x] != best[x]:
                if cur[x] < best[x]:
                    best[:] = cur
                break
    return best
