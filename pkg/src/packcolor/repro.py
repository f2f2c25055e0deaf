"""Reproduction suite: each criterion re-derives one published number (or a
property check) and reports pass/fail with a one-line detail.

``run(tier)`` drives everything; ``desk`` finishes in minutes on one core,
``long`` adds the recomputations that take longer.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _backend
from .anneal import AnnealConfig, search as anneal_search
from .construct import assemble, sweep_rows
from .density import combine, max_colorable
from .graph import distance_array, grid_lower_bound, max_window_for_color
from .oracles import bfs_distances, colorable, max_colored_bruteforce, naive_violations
from .pattern import PeriodicColoring, period320_pattern, verify_periodic
from .search import SearchProblem, prove

# Single-entry changes to the period-320 word of D(1, 4): (position, new color).
# Each copies the color of a vertex at distance 1 or 2 and must be rejected.
MUTATIONS = [(0, 3), (33, 1), (65, 2), (97, 3), (130, 3), (161, 1), (194, 1), (225, 2), (258, 6),
             (300, 3)]

# Smaller-c infeasibility instances standing in for the multi-week searches:
# (t, c, k) with 1..k-1 colorable and 1..k not, vertex 1 colored c.
SMALL_INSTANCES = [(4, 9, 21), (7, 8, 27), (9, 8, 31)]


@dataclass
class Result:
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.elapsed:.1f}s)"


def c1_period320() -> tuple[bool, str]:
    start = time.monotonic()
    base = period320_pattern()
    ok = base.spec.t == 4 and base.period == 320 and base.colors == 15 and verify_periodic(base).valid
    rejected = 0
    for pos, color in MUTATIONS:
        word = base.word.copy()
        word[pos] = color
        if not verify_periodic(PeriodicColoring(4, word)).valid:
            rejected += 1
    el = time.monotonic() - start
    return ok and rejected == len(MUTATIONS) and el < 1.0, \
        f"pattern valid={ok}, mutations rejected {rejected}/{len(MUTATIONS)}, {el:.3f}s"


def c2_t5() -> tuple[bool, str]:
    out = prove(SearchProblem(5, 11, 134), max_seconds=7200)
    detail = f"t=5 c=11 k=134: {out.status}, {out.nodes} nodes"
    if out.feasible:
        detail += " (a verified coloring of 1..134 with color 11 on vertex 1 exists)"
    return out.infeasible, detail


def c2_t5_next() -> tuple[bool, str]:
    out = prove(SearchProblem(5, 11, 135), max_seconds=7200)
    return out.infeasible, f"t=5 c=11 k=135: {out.status}, {out.nodes} nodes"


def c3_t6() -> tuple[bool, str]:
    wb = max_colorable(6, 4, 41)
    led = combine(6, 14, 4, 41)
    ok = wb.max_colored == 31 and led.decimal() == "0.999771" and led.lower_bound == 15
    return ok, f"M(6,4,41)={wb.max_colored}, total={led.total}={led.decimal()}, bound={led.lower_bound}"


def c4_t8_paper_value() -> tuple[bool, str]:
    led = combine(8, 14, 6, 58, max_colored=50)
    ok = led.decimal() == "0.999110" and led.lower_bound == 15
    return ok, f"M=50 ({led.window.provenance}), total={led.total}={led.decimal()}, bound={led.lower_bound}"


def c4_t8_recompute() -> tuple[bool, str]:
    wb = max_colorable(8, 6, 58)
    return wb.max_colored == 50, f"M(8,6,58)={wb.max_colored}, {wb.nodes} nodes"


def c5_sweep() -> tuple[bool, str]:
    bad = []
    worst = 0.0
    for r, t in sweep_rows():
        start = time.monotonic()
        try:
            a = assemble(t)
            limit = 35 if t % 2 else 56
            if not (a.verdict.valid and a.coloring.colors <= limit):
                bad.append(t)
        except Exception:  # reported as a failed row
            bad.append(t)
        worst = max(worst, time.monotonic() - start)
    rows = len(sweep_rows())
    return not bad and worst < 300, f"{rows - len(bad)}/{rows} rows verified, slowest {worst:.2f}s" + (
        f", failed t={bad}" if bad else "")


def c6_closed_forms() -> tuple[bool, str]:
    a = all(max_window_for_color(6, i) == 6 * i - 9 for i in range(2, 15))
    b = all(max_window_for_color(8, i) == 8 * i - 20 for i in range(3, 15))
    return a and b, f"t=6: 6i-9 {'ok' if a else 'mismatch'}; t=8: 8i-20 {'ok' if b else 'mismatch'}"


def c7_grid() -> tuple[bool, str]:
    g9, g8 = grid_lower_bound(9), grid_lower_bound(8)
    ok = g9 is not None and g9.bound == 12 and g8 is None
    return ok, f"t=9 -> {None if g9 is None else g9.bound}, t=8 -> {g8}"


def c8_properties() -> tuple[bool, str]:
    parts = []
    # metric
    metric = all(list(bfs_distances(t, 2000)) == distance_array(t, 2000).tolist() for t in range(2, 21))
    parts.append(f"metric {'ok' if metric else 'FAIL'}")
    # lb-search against enumerate-all
    lb = True
    for t in range(2, 6):
        for c in range(1, 6):
            for k in range(1, 15):
                for fix in (c, None):
                    got = prove(SearchProblem(t, c, k, fix)).feasible
                    lb &= got == colorable(t, c, k, fix)
    parts.append(f"lb-search {'ok' if lb else 'FAIL'}")
    # window maximum against enumerate-all
    mc = all(max_colorable(t, l, m).max_colored == max_colored_bruteforce(t, l, m)
             for t in (4, 5, 6) for l in (1, 2, 3) for m in range(1, 13))
    parts.append(f"max_colorable {'ok' if mc else 'FAIL'}")
    # periodic verifier against a wide window
    rng = np.random.default_rng(2024)
    vp = True
    for _ in range(400):
        t = int(rng.integers(2, 9))
        p = int(rng.integers(1, 41))
        word = rng.integers(1, int(rng.integers(1, 12)) + 1, p).tolist()
        naive = naive_violations(word, t)
        v = verify_periodic(PeriodicColoring(t, word)).violation
        vp &= (v is None) == (not naive) and (v is None or (v.i, v.j) == naive[0])
    parts.append(f"verify_periodic {'ok' if vp else 'FAIL'}")
    # annealing determinism
    cfg = AnnealConfig(2, 8, 8, seed=7, levels=300)
    r1, r2 = anneal_search(cfg), anneal_search(cfg)
    det = r1.trace == r2.trace and np.array_equal(r1.word, r2.word)
    if _backend.BACKEND == "compiled":
        r3 = anneal_search(cfg, backend="python")
        det &= r3.trace == r1.trace
    parts.append(f"anneal determinism {'ok' if det else 'FAIL'}")
    return metric and lb and mc and vp and det, ", ".join(parts)


def c9_small_instances() -> tuple[bool, str]:
    parts = []
    ok = True
    for t, c, k in SMALL_INSTANCES:
        below = prove(SearchProblem(t, c, k - 1)).feasible
        at = prove(SearchProblem(t, c, k)).infeasible
        good = below and at and colorable(t, c, k - 1, c) and not colorable(t, c, k, c)
        ok &= good
        parts.append(f"t={t} c={c}: smallest k={k} {'ok' if good else 'FAIL'}")
    return ok, "; ".join(parts)


CRITERIA: list[tuple[str, str, Callable[[], tuple[bool, str]]]] = [
    ("1", "desk", c1_period320),
    ("2", "desk", c2_t5),
    ("2+", "long", c2_t5_next),
    ("3", "desk", c3_t6),
    ("4", "desk", c4_t8_paper_value),
    ("4+", "long", c4_t8_recompute),
    ("5", "desk", c5_sweep),
    ("6", "desk", c6_closed_forms),
    ("7", "desk", c7_grid),
    ("8", "desk", c8_properties),
    ("9", "desk", c9_small_instances),
]


def check(name: str) -> Result:
    fn = {n: f for n, _, f in CRITERIA}[name]
    start = time.monotonic()
    ok, detail = fn()
    return Result(f"criterion {name}", ok, detail, time.monotonic() - start)


def run(tier: str = "desk", echo=print) -> list[Result]:
    tiers = {"desk": ("desk",), "long": ("desk", "long")}[tier]
    out = []
    for name, t, _ in CRITERIA:
        if t in tiers:
            res = check(name)
            if echo:
                echo(res.line())
            out.append(res)
    return out
