"""Slow, independent reference implementations.

Nothing here shares code with the kernels: distances come from breadth-first
search on an explicit window of D(1, t), colorings are enumerated with plain
recursion. Used by the test suite and by ``packcolor repro`` to cross-check
the fast paths.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache


@lru_cache(maxsize=64)
def bfs_distances(t: int, nmax: int) -> tuple[int, ...]:
    """``dist(0, n)`` for ``0 <= n <= nmax`` by BFS.

    The search runs on the window ``[-pad, nmax + pad]``; a shortest walk to
    ``n`` never needs to leave ``[-t, n + t]`` by more than one jump, so a pad
    of ``2t`` is ample.
    """
    pad = 2 * t
    lo, hi = -pad, nmax + pad
    dist = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in (u - 1, u + 1, u - t, u + t):
            if lo <= w <= hi and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(dist[n] for n in range(nmax + 1))


def naive_violations(word, t: int, span: int = 3) -> list[tuple[int, int]]:
    """All pairs ``(i, j)``, ``0 <= i < p``, ``i < j < i + span*c*t + p``,
    violating the packing condition, for the periodic extension of ``word``
    with ``c`` its largest entry. Deliberately wider than needed."""
    p = len(word)
    c = max(word)
    reach = span * c * t + p
    d = bfs_distances(t, reach)
    out = []
    for i in range(p):
        v = word[i]
        for j in range(i + 1, i + reach):
            if word[j % p] == v and d[j - i] <= v:
                out.append((i, j))
    return out


def colorable(t: int, c: int, k: int, first: int | None = None) -> bool:
    """Does a packing coloring of ``1..k`` with colors ``1..c`` exist, with
    vertex 1 colored ``first`` when given? Plain recursion."""
    d = bfs_distances(t, k)
    col = [0] * (k + 1)

    def ok(i, v):
        for j in range(max(1, i - v * t), i):
            if col[j] == v and d[i - j] <= v:
                return False
        return True

    def rec(i):
        if i > k:
            return True
        choices = [first] if (i == 1 and first is not None) else range(1, c + 1)
        for v in choices:
            if ok(i, v):
                col[i] = v
                if rec(i + 1):
                    return True
        col[i] = 0
        return False

    return rec(1)


def smallest_uncolorable(t: int, c: int, kmax: int, first: int | None = None) -> int | None:
    for k in range(1, kmax + 1):
        if not colorable(t, c, k, first):
            return k
    return None


def max_colored_bruteforce(t: int, l: int, m: int) -> int:
    """Largest number of vertices of ``1..m`` colorable from ``1..l`` (the rest
    left uncolored): enumerate every valid partial coloring, no bounding."""
    d = bfs_distances(t, m)
    col = [0] * m
    best = 0

    def rec(i, n):
        nonlocal best
        if i == m:
            best = max(best, n)
            return
        rec(i + 1, n)
        for v in range(1, l + 1):
            if all(col[j] != v or d[i - j] > v for j in range(max(0, i - v * t), i)):
                col[i] = v
                rec(i + 1, n + 1)
                col[i] = 0

    rec(0, 0)
    return best
