# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_pykernels`` for the documented reference."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()

cdef enum:
    EXHAUSTED = 0
    FOUND = 1
    PAUSED = 2


cdef inline long long _mod(long long a, long long p) nogil:
    cdef long long r = a % p
    if r < 0:
        r += p
    return r


def first_violation(const int[::1] word, const long long[::1] offs_ptr,
                    const long long[::1] offs):
    cdef long long p = word.shape[0]
    cdef long long i, idx, n, hit_i = -1, hit_j = -1
    cdef int v
    with nogil:
        for i in range(p):
            v = word[i]
            for idx in range(offs_ptr[v], offs_ptr[v + 1]):
                n = offs[idx]
                if word[(i + n) % p] == v:
                    hit_i = i
                    hit_j = i + n
                    break
            if hit_i >= 0:
                break
    return int(hit_i), int(hit_j)


def first_violation_finite(const int[::1] word, const long long[::1] offs_ptr,
                           const long long[::1] offs):
    cdef long long p = word.shape[0]
    cdef long long i, idx, n
    cdef int v
    for i in range(p):
        v = word[i]
        if v == 0:
            continue
        for idx in range(offs_ptr[v], offs_ptr[v + 1]):
            n = offs[idx]
            if i + n >= p:
                break
            if word[i + n] == v:
                return int(i), int(i + n)
    return -1, -1


def count_violations(const int[::1] word, const long long[::1] offs_ptr,
                     const long long[::1] offs):
    cdef long long p = word.shape[0]
    cdef long long i, idx, total = 0
    cdef int v
    with nogil:
        for i in range(p):
            v = word[i]
            for idx in range(offs_ptr[v], offs_ptr[v + 1]):
                if word[(i + offs[idx]) % p] == v:
                    total += 1
    return int(total)


cdef long long _involving(int[::1] w, long long p, const long long[::1] ptr,
                          const long long[::1] ol, long long x, int v) nogil:
    cdef long long a = 0, idx, n
    for idx in range(ptr[v], ptr[v + 1]):
        n = ol[idx]
        if w[_mod(x + n, p)] == v:
            a += 1
        if w[_mod(x - n, p)] == v:
            a += 1
        if n % p == 0:
            a -= 1
    return a


def anneal_chain(int[::1] word, long long energy, const long long[::1] offs_ptr,
                 const long long[::1] offs, const long long[::1] positions,
                 const int[::1] colors, const double[::1] uniforms,
                 const double[::1] temps):
    cdef long long p = word.shape[0]
    cdef long long n = positions.shape[0]
    cdef long long s, x, before, delta, best = energy
    cdef int new, old
    trace_arr = np.empty(n, dtype=np.int64)
    best_arr = np.asarray(word).copy()
    cdef long long[::1] trace = trace_arr
    cdef int[::1] best_w = best_arr
    for s in range(n):
        x = positions[s]
        new = colors[s]
        old = word[x]
        if new != old:
            before = _involving(word, p, offs_ptr, offs, x, old)
            word[x] = new
            delta = _involving(word, p, offs_ptr, offs, x, new) - before
            if delta <= 0 or uniforms[s] < exp(-(<double>delta) / temps[s]):
                energy += delta
                if energy < best:
                    best = energy
                    best_w[:] = word
            else:
                word[x] = old
        trace[s] = energy
    return int(energy), int(best), best_arr, trace_arr


def dfs_extend(const unsigned char[:, ::1] forb, int t, int c, int k,
               int first_lo, int first_hi, int floor, int[::1] colors,
               int depth, long long max_nodes):
    cdef int[:, ::1] stacks = np.zeros((c + 1, max(k, 1)), dtype=np.int32)
    cdef int[::1] cnt = np.zeros(c + 1, dtype=np.int32)
    cdef long long nodes = 0
    cdef int q, v, lo, hi, chosen, idx, d, reach, status
    cdef bint ok
    for q in range(depth):
        v = colors[q]
        stacks[v, cnt[v]] = q
        cnt[v] += 1
    with nogil:
        while True:
            if depth == k:
                status = FOUND
                break
            if nodes >= max_nodes:
                status = PAUSED
                break
            lo = colors[depth] + 1
            hi = c
            if depth == 0:
                if first_lo > lo:
                    lo = first_lo
                hi = first_hi
            chosen = 0
            for v in range(lo, hi + 1):
                reach = v * t
                ok = True
                idx = cnt[v] - 1
                while idx >= 0:
                    d = depth - stacks[v, idx]
                    if d > reach:
                        break
                    if forb[v, d]:
                        ok = False
                        break
                    idx -= 1
                if ok:
                    chosen = v
                    break
            if chosen:
                colors[depth] = chosen
                stacks[chosen, cnt[chosen]] = depth
                cnt[chosen] += 1
                nodes += 1
                depth += 1
                if depth < k:
                    colors[depth] = 0
            else:
                colors[depth] = 0
                depth -= 1
                if depth < floor:
                    status = EXHAUSTED
                    depth = floor
                    break
                cnt[colors[depth]] -= 1
    return status, depth, int(nodes)


def maxcol_search(const unsigned char[:, ::1] forb, int t, int l, int m,
                  const int[::1] suffix_bound, int target, int[::1] choice,
                  int[::1] colors, int depth, int colored, long long max_nodes):
    cdef int[:, ::1] stacks = np.zeros((l + 1, max(m, 1)), dtype=np.int32)
    cdef int[::1] cnt = np.zeros(l + 1, dtype=np.int32)
    cdef long long nodes = 0
    cdef int q, v, idx, j, d, reach, status
    cdef bint ok, advanced
    for q in range(depth):
        v = colors[q]
        if v:
            stacks[v, cnt[v]] = q
            cnt[v] += 1
    with nogil:
        while True:
            if colored >= target:
                status = FOUND
                break
            if nodes >= max_nodes:
                status = PAUSED
                break
            advanced = False
            if depth < m and colored + suffix_bound[m - depth] >= target:
                idx = choice[depth] + 1
                while idx <= l:
                    v = idx + 1 if idx < l else 0
                    ok = True
                    if v:
                        reach = v * t
                        j = cnt[v] - 1
                        while j >= 0:
                            d = depth - stacks[v, j]
                            if d > reach:
                                break
                            if forb[v, d]:
                                ok = False
                                break
                            j -= 1
                    if ok:
                        choice[depth] = idx
                        colors[depth] = v
                        if v:
                            stacks[v, cnt[v]] = depth
                            cnt[v] += 1
                            colored += 1
                        nodes += 1
                        depth += 1
                        if depth < m:
                            choice[depth] = -1
                        advanced = True
                        break
                    idx += 1
            if not advanced:
                if depth < m:
                    choice[depth] = -1
                depth -= 1
                if depth < 0:
                    status = EXHAUSTED
                    depth = 0
                    break
                v = colors[depth]
                if v:
                    cnt[v] -= 1
                    colored -= 1
                colors[depth] = 0
    return status, depth, colored, int(nodes)
