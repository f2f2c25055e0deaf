"""Search for a periodic packing coloring of the path with colors k..3k+2.

Two positions of color v must be more than v apart. Simulated annealing over
words of a fixed period; every color must appear in the result. Development
tool only (needs numba); the package ships the k=18 result.

    python tools/gen_path.py 18 144 src/packcolor/data/path_k18.txt
"""
import sys
import time

import numba
import numpy as np


@numba.njit(cache=True)
def conflicts(w, p, x, v):
    c = 0
    for n in range(1, v + 1):
        if w[(x + n) % p] == v:
            c += 1
        if w[(x - n) % p] == v:
            c += 1
    return c


@numba.njit(cache=True)
def chain(seed, p, lo, hi, steps, t0, alpha):
    np.random.seed(seed)
    w = np.random.randint(lo, hi + 1, p)
    e = 0
    for x in range(p):
        e += conflicts(w, p, x, w[x])
    e //= 2
    temp = t0
    for s in range(steps):
        x = np.random.randint(p)
        v = np.random.randint(lo, hi + 1)
        old = w[x]
        if v == old:
            continue
        d = conflicts(w, p, x, v) - conflicts(w, p, x, old)
        if d <= 0 or np.random.random() < np.exp(-d / temp):
            w[x] = v
            e += d
            if e == 0:
                return w, 0
        if s % 1000 == 0:
            temp *= alpha
    return w, e


def main(k, period, out):
    lo, hi = k, 3 * k + 2
    start = time.time()
    for seed in range(100):
        w, e = chain(seed, period, lo, hi, 20_000_000, 1.0, 0.995)
        print(f"seed {seed}: energy {e} ({time.time() - start:.0f}s)", flush=True)
        if e == 0 and set(w.tolist()) == set(range(lo, hi + 1)):
            with open(out, "w") as fh:
                fh.write(f"# Period-{period} packing coloring of the path with colors "
                         f"{lo}..{hi} (each used).\n")
                fh.write(f"# Found by tools/gen_path.py (simulated annealing, seed {seed}).\n")
                fh.write(f"k={k} period={period}\n")
                fh.write(",".join(map(str, w.tolist())) + "\n")
            return 0
    return 1


if __name__ == "__main__":
    sys.exit(main(int(sys.argv[1]), int(sys.argv[2]), sys.argv[3]))
