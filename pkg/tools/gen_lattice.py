"""Search for a 24x24 toroidal packing 17-coloring of the square lattice.

Color 1 occupies the cells with x + y even; colors 2..17 go on the remaining
cells. Simulated annealing minimises the number of same-colored pairs at
torus Manhattan distance <= color. A SAT encoding of the same problem did not
finish within hours; annealing hits zero after a few dozen chains.

Development tool only (needs numba). The package ships the resulting file and
validates it on load.

    python tools/gen_lattice.py src/packcolor/data/lattice24.txt [seed]
"""
import sys
import time

import numba
import numpy as np

SIDE = 24
LO, HI = 2, 17


def tables():
    cells = [(x, y) for x in range(SIDE) for y in range(SIDE) if (x + y) % 2]
    pts = np.array(cells)
    d = np.abs(pts[:, None, :] - pts[None, :, :])
    dist = np.minimum(d, SIDE - d).sum(axis=2)
    order = np.argsort(dist, axis=1, kind="stable").astype(np.int32)
    ds = np.take_along_axis(dist, order, axis=1)
    # cnt[i, v]: cells within distance v of cell i, itself included
    cnt = np.stack([(ds <= v).sum(axis=1) for v in range(HI + 1)], axis=1).astype(np.int32)
    return cells, order, cnt


@numba.njit(cache=True)
def conflicts(col, i, v, order, cnt):
    c = 0
    for idx in range(1, cnt[i, v]):
        if col[order[i, idx]] == v:
            c += 1
    return c


@numba.njit(cache=True)
def chain(seed, steps, t0, alpha, order, cnt, n):
    np.random.seed(seed)
    col = np.random.randint(LO, HI + 1, n).astype(np.int32)
    e = 0
    for i in range(n):
        e += conflicts(col, i, col[i], order, cnt)
    e //= 2
    temp = t0
    best = e
    for s in range(steps):
        i = np.random.randint(n)
        v = np.random.randint(LO, HI + 1)
        old = col[i]
        if v == old:
            continue
        d = conflicts(col, i, v, order, cnt) - conflicts(col, i, old, order, cnt)
        if d <= 0 or np.random.random() < np.exp(-d / temp):
            col[i] = v
            e += d
            best = min(best, e)
            if e == 0:
                return col, 0
        if s % 1000 == 0:
            temp *= alpha
    return col, best


def main(out, seed=0):
    cells, order, cnt = tables()
    start = time.time()
    for r in range(1000):
        col, best = chain(seed + r, 30_000_000, 2.0, 0.9995, order, cnt, len(cells))
        print(f"chain {seed + r}: best {best} ({time.time() - start:.0f}s)", flush=True)
        if best == 0:
            grid = np.ones((SIDE, SIDE), dtype=int)
            for (x, y), v in zip(cells, col):
                grid[x, y] = v
            with open(out, "w") as fh:
                fh.write("# 24x24 toroidal packing 17-coloring of the square lattice.\n")
                fh.write("# Line a lists column a of a strip; entry b is row b. "
                         "Color 1 fills cells with a+b even.\n")
                fh.write(f"# Found by tools/gen_lattice.py (simulated annealing, chain seed {seed + r}).\n")
                for row in grid:
                    fh.write(" ".join(f"{v:2d}" for v in row) + "\n")
            return 0
    return 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else 0))
