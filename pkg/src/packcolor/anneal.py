"""Simulated annealing over fixed-period words.

The energy of a word is the number of violating pairs ``(i, i+n)`` with ``i``
in one period and ``n`` a forbidden offset of the shared color, so energy 0
means the periodic extension is a packing coloring. Moves recolor a single
position; the energy change only involves pairs touching that position.

All random draws come from a seeded ``numpy`` generator and are handed to the
kernel in batches, so a run is reproducible bit for bit on either backend.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _backend
from .graph import DistanceSpec, _as_spec, offset_csr
from .pattern import PeriodicColoring, verify_periodic


@dataclass(frozen=True)
class AnnealConfig:
    spec: DistanceSpec
    period: int
    colors: int
    seed: int = 0
    initial_temperature: Optional[float] = None  # None: calibrate to ~80% uphill acceptance
    cooling: float = 0.999
    steps_per_temperature: int = 200
    levels: int = 20000
    restarts: int = 10
    patience: int = 5000  # levels without improvement before the next restart

    def __post_init__(self):
        object.__setattr__(self, "spec", _as_spec(self.spec))
        if not 0 < self.cooling < 1:
            raise ValueError("cooling factor must lie in (0, 1)")
        if self.period < 1 or self.colors < 1:
            raise ValueError("period and colors must be >= 1")


@dataclass
class AnnealResult:
    word: np.ndarray
    energy: int
    restart: int
    trace: list[tuple[int, float, int]] = field(repr=False)
    coloring: Optional[PeriodicColoring] = None


def energy(word, spec) -> int:
    """Number of violating pairs of the periodic word ``word`` on D(1, t)."""
    w = np.ascontiguousarray(word, dtype=np.int32)
    ptr, offs = offset_csr(spec, int(w.max()))
    return int(_backend.kernels.count_violations(w, ptr, offs))


def involving(word, offs_ptr, offs, x: int) -> int:
    """Violating pairs that touch position ``x`` (reference for move deltas)."""
    w = np.asarray(word).tolist()
    return _backend._pykernels._involving(w, len(w), offs_ptr.tolist(), offs.tolist(), x, w[x])


def _calibrate(rng, word, ptr, offs, lo, hi, samples=400, accept=0.8) -> float:
    p = len(word)
    w = word.copy()
    ups = []
    for _ in range(samples):
        x = int(rng.integers(p))
        v = int(rng.integers(lo, hi + 1))
        before = involving(w, ptr, offs, x)
        old = w[x]
        w[x] = v
        d = involving(w, ptr, offs, x) - before
        w[x] = old
        if d > 0:
            ups.append(d)
    if not ups:
        return 1.0
    return -float(np.mean(ups)) / math.log(accept)


def anneal_words(period: int, lo: int, hi: int, offs_ptr, offs, seed: int, *, cooling: float,
                 steps_per_temperature: int, levels: int, restarts: int, patience: int,
                 initial_temperature: Optional[float] = None, backend: Optional[str] = None):
    """Anneal words of length ``period`` over colors ``lo..hi`` against an
    arbitrary forbidden-offset table. Returns ``(best_word, best_energy,
    restart_index, trace)``; stops early at energy 0."""
    kern = _backend.get(backend)
    best = (None, None, -1, [])
    for restart in range(restarts):
        rng = np.random.default_rng(seed + restart)
        word = rng.integers(lo, hi + 1, period).astype(np.int32)
        e = int(kern.count_violations(word, offs_ptr, offs))
        temp = initial_temperature or _calibrate(rng, word, offs_ptr, offs, lo, hi)
        chain_best, chain_word = e, word.copy()
        trace = [(0, temp, e)]
        step = 0
        stale = 0
        for _ in range(levels):
            if chain_best == 0:
                break
            n = steps_per_temperature
            pos = rng.integers(0, period, n).astype(np.int64)
            col = rng.integers(lo, hi + 1, n).astype(np.int32)
            uni = rng.random(n)
            temps = np.full(n, temp)
            e, b, bw, _ = kern.anneal_chain(word, e, offs_ptr, offs, pos, col, uni, temps)
            step += n
            if b < chain_best:
                chain_best, chain_word, stale = b, bw, 0
            else:
                stale += 1
            trace.append((step, temp, e))
            temp *= cooling
            if stale >= patience:
                break
        if best[1] is None or chain_best < best[1]:
            best = (chain_word, chain_best, restart, trace)
        if chain_best == 0:
            break
    return best


def search(config: AnnealConfig, backend: Optional[str] = None) -> AnnealResult:
    """Look for a packing coloring of D(1, t) with the given period and
    colors ``1..colors``; the best word seen is always returned."""
    ptr, offs = offset_csr(config.spec, config.colors)
    word, e, restart, trace = anneal_words(
        config.period, 1, config.colors, ptr, offs, config.seed, cooling=config.cooling,
        steps_per_temperature=config.steps_per_temperature, levels=config.levels,
        restarts=config.restarts, patience=config.patience,
        initial_temperature=config.initial_temperature, backend=backend)
    result = AnnealResult(word, e, restart, trace)
    if e == 0:
        coloring = PeriodicColoring(config.spec, word)
        if not verify_periodic(coloring).valid:  # pragma: no cover - kernel bug guard
            raise AssertionError("zero-energy word rejected by the verifier")
        result.coloring = coloring
    return result
