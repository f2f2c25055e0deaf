"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends; results must agree exactly, and the
table reports the best wall time of ``--repeat`` runs and the speedup.
"""
import argparse
import time

import numpy as np

from packcolor import _backend
from packcolor.construct import assemble
from packcolor.graph import forbidden_table, offset_csr
from packcolor.pattern import period320_pattern


def _verify_big():
    word = assemble(575).coloring.word
    ptr, offs = offset_csr(575, int(word.max()))
    return lambda k: k.first_violation(word, ptr, offs)


def _verify_320():
    word = period320_pattern().word
    ptr, offs = offset_csr(4, 15)
    return lambda k: k.first_violation(word, ptr, offs)


def _dfs():
    forb = forbidden_table(4, 9)

    def run(k):
        colors = np.zeros(22, dtype=np.int32)
        return k.dfs_extend(forb, 4, 9, 21, 9, 9, 0, colors, 0, 1 << 40)
    return run


def _anneal():
    ptr, offs = offset_csr(4, 15)
    rng = np.random.default_rng(1)
    n = 20000
    pos = rng.integers(0, 320, n).astype(np.int64)
    col = rng.integers(1, 16, n).astype(np.int32)
    uni = rng.random(n)
    temps = np.full(n, 0.5)

    def run(k):
        word = np.ascontiguousarray(period320_pattern().word.copy())
        e = int(k.count_violations(word, ptr, offs))
        out = k.anneal_chain(word, e, ptr, offs, pos, col, uni, temps)
        return out[0], out[1]
    return run


WORKLOADS = [
    ("verify period 320, t=4", _verify_320),
    ("verify t=575 assembly (period 41400)", _verify_big),
    ("lb-search t=4 c=9 k=21", _dfs),
    ("anneal 20k moves, t=4 p=320", _anneal),
]


def best_of(fn, kern, repeat):
    best, out = None, None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(kern)
        el = time.perf_counter() - start
        best = el if best is None else min(best, el)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _backend.BACKEND != "compiled":
        print("compiled extension not available; only the Python backend can run")
    py = _backend.get("python")
    print(f"{'workload':<40} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for name, make in WORKLOADS:
        fn = make()
        tp, op = best_of(fn, py, 1)
        if _backend.BACKEND == "compiled":
            tc, oc = best_of(fn, _backend.get("compiled"), args.repeat)
            same = str(oc) == str(op)
            print(f"{name:<40} {tc:>9.4f}s {tp:>9.3f}s {tp / tc:>7.0f}x" + ("" if same else "  MISMATCH"))
        else:
            print(f"{name:<40} {'-':>10} {tp:>9.3f}s")


if __name__ == "__main__":
    main()
