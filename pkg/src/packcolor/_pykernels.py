"""Pure-Python reference implementations of the hot loops.

Mirrors ``_ckernels.pyx`` statement for statement so both backends produce
identical results (node counts, witnesses, annealing traces). Selected
automatically when the compiled extension is unavailable.
"""
import math

import numpy as np

# search status codes shared with the compiled backend
EXHAUSTED, FOUND, PAUSED = 0, 1, 2


def first_violation(word, offs_ptr, offs):
    """First same-color pair ``(i, i+n)`` with ``n`` a forbidden offset of the
    color, lexicographic in ``(i, i+n)``; ``(-1, -1)`` if none.

    ``offs[offs_ptr[v]:offs_ptr[v+1]]`` are the ascending forbidden offsets of
    color ``v``; positions are read modulo ``len(word)``.
    """
    p = len(word)
    w = word.tolist()
    ptr = offs_ptr.tolist()
    ol = offs.tolist()
    for i in range(p):
        v = w[i]
        for idx in range(ptr[v], ptr[v + 1]):
            n = ol[idx]
            if w[(i + n) % p] == v:
                return i, i + n
    return -1, -1


def first_violation_finite(word, offs_ptr, offs):
    """Like :func:`first_violation` on a finite word; 0 entries are uncolored
    and positions past the end do not exist."""
    p = len(word)
    w = word.tolist()
    ptr = offs_ptr.tolist()
    ol = offs.tolist()
    for i in range(p):
        v = w[i]
        if v == 0:
            continue
        for idx in range(ptr[v], ptr[v + 1]):
            n = ol[idx]
            if i + n >= p:
                break
            if w[i + n] == v:
                return i, i + n
    return -1, -1


def count_violations(word, offs_ptr, offs):
    p = len(word)
    w = word.tolist()
    ptr = offs_ptr.tolist()
    ol = offs.tolist()
    total = 0
    for i in range(p):
        v = w[i]
        for idx in range(ptr[v], ptr[v + 1]):
            if w[(i + ol[idx]) % p] == v:
                total += 1
    return total


def _involving(w, p, ptr, ol, x, v):
    # pairs touching x when x carries v; pairs (x, x+n) with n = 0 mod p are
    # seen from both sides and subtracted once
    a = 0
    for idx in range(ptr[v], ptr[v + 1]):
        n = ol[idx]
        if w[(x + n) % p] == v:
            a += 1
        if w[(x - n) % p] == v:
            a += 1
        if n % p == 0:
            a -= 1
    return a


def anneal_chain(word, energy, offs_ptr, offs, positions, colors, uniforms, temps):
    """Run Metropolis single-site recoloring moves in place.

    Returns ``(energy, best_energy, best_word, trace)`` where ``trace[s]`` is
    the energy after step ``s``.
    """
    p = len(word)
    w = word.tolist()
    ptr = offs_ptr.tolist()
    ol = offs.tolist()
    n = len(positions)
    trace = np.empty(n, dtype=np.int64)
    best = energy
    best_w = list(w)
    for s in range(n):
        x = int(positions[s])
        new = int(colors[s])
        old = w[x]
        if new != old:
            before = _involving(w, p, ptr, ol, x, old)
            w[x] = new
            delta = _involving(w, p, ptr, ol, x, new) - before
            if delta <= 0 or uniforms[s] < math.exp(-delta / temps[s]):
                energy += delta
                if energy < best:
                    best = energy
                    best_w = list(w)
            else:
                w[x] = old
        trace[s] = energy
    word[:] = w
    return energy, best, np.asarray(best_w, dtype=np.int32), trace


def dfs_extend(forb, t, c, k, first_lo, first_hi, floor, colors, depth, max_nodes):
    """Left-to-right backtracking over positions ``0..k-1`` with colors
    ``1..c`` tried in ascending order.

    State lives in ``colors``: entries below ``depth`` are placed, and
    ``colors[depth]`` is the last color tried at ``depth`` (0 if none). The
    search never backtracks below ``floor``. Position 0 is restricted to
    ``[first_lo, first_hi]``. Returns ``(status, depth, nodes)``; a node is one
    successful placement.
    """
    col = colors.tolist()
    rows = [forb[v].tolist() for v in range(c + 1)]
    stacks = [[] for _ in range(c + 1)]
    for q in range(depth):
        stacks[col[q]].append(q)
    nodes = 0
    while True:
        if depth == k:
            status = FOUND
            break
        if nodes >= max_nodes:
            status = PAUSED
            break
        lo = col[depth] + 1
        hi = c
        if depth == 0:
            lo = max(lo, first_lo)
            hi = first_hi
        chosen = 0
        for v in range(lo, hi + 1):
            reach = v * t
            row = rows[v]
            st = stacks[v]
            ok = True
            for idx in range(len(st) - 1, -1, -1):
                d = depth - st[idx]
                if d > reach:
                    break
                if row[d]:
                    ok = False
                    break
            if ok:
                chosen = v
                break
        if chosen:
            col[depth] = chosen
            stacks[chosen].append(depth)
            nodes += 1
            depth += 1
            if depth < k:
                col[depth] = 0
        else:
            col[depth] = 0
            depth -= 1
            if depth < floor:
                status = EXHAUSTED
                depth = floor
                break
            stacks[col[depth]].pop()
    colors[:] = col
    return status, depth, nodes


def maxcol_search(forb, t, l, m, suffix_bound, target, choice, colors, depth, colored, max_nodes):
    """Branch and bound for a coloring of ``m`` consecutive vertices with
    colors ``1..l`` (0 = uncolored) that colors at least ``target`` vertices.

    Values are tried in the order ``1..l, 0``; ``choice[p]`` holds the index
    of the last value tried at ``p`` (-1 if none). A branch at position ``p``
    is cut when ``colored + suffix_bound[m - p] < target``. Returns
    ``(status, depth, colored, nodes)``.
    """
    ch = choice.tolist()
    col = colors.tolist()
    sb = suffix_bound.tolist()
    rows = [forb[v].tolist() for v in range(l + 1)]
    stacks = [[] for _ in range(l + 1)]
    for q in range(depth):
        if col[q]:
            stacks[col[q]].append(q)
    nodes = 0
    while True:
        if colored >= target:
            status = FOUND
            break
        if nodes >= max_nodes:
            status = PAUSED
            break
        advanced = False
        if depth < m and colored + sb[m - depth] >= target:
            idx = ch[depth] + 1
            while idx <= l:
                v = idx + 1 if idx < l else 0
                ok = True
                if v:
                    reach = v * t
                    row = rows[v]
                    st = stacks[v]
                    for j in range(len(st) - 1, -1, -1):
                        d = depth - st[j]
                        if d > reach:
                            break
                        if row[d]:
                            ok = False
                            break
                if ok:
                    ch[depth] = idx
                    col[depth] = v
                    if v:
                        stacks[v].append(depth)
                        colored += 1
                    nodes += 1
                    depth += 1
                    if depth < m:
                        ch[depth] = -1
                    advanced = True
                    break
                idx += 1
        if not advanced:
            if depth < m:
                ch[depth] = -1
            depth -= 1
            if depth < 0:
                status = EXHAUSTED
                depth = 0
                break
            v = col[depth]
            if v:
                stacks[v].pop()
                colored -= 1
            col[depth] = 0
    choice[:] = ch
    colors[:] = col
    return status, depth, colored, nodes
