"""Metric facts about the distance graph D(1, t).

The vertices are the integers and ``i ~ j`` iff ``|i - j|`` is 1 or ``t``.
Everything here is pure and cheap; the search and verification kernels consume
the dense :class:`ForbiddenOffsetSet` tables built from :func:`distance`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class DistanceSpec:
    """The jump length ``t`` of D(1, t)."""

    t: int

    def __post_init__(self) -> None:
        if not isinstance(self.t, (int, np.integer)) or self.t < 2:
            raise ValueError(f"t must be an integer >= 2, got {self.t!r}")


def _as_spec(spec) -> DistanceSpec:
    return spec if isinstance(spec, DistanceSpec) else DistanceSpec(int(spec))


def offset_distance(t: int, n: int) -> int:
    """Graph distance from 0 to ``n`` in D(1, t).

    A shortest walk uses ``s`` jumps of length t in one direction and
    ``|n - s*t|`` unit steps. For ``n >= 0`` jumping backwards never helps, and
    more than ``ceil(n/t)`` forward jumps only overshoots further, so the scan
    over ``s in [0, ceil(n/t)]`` is exhaustive.
    """
    n = abs(n)
    best = n
    for s in range(1, -(-n // t) + 1):
        d = s + abs(n - s * t)
        if d < best:
            best = d
    return best


def distance(spec, a: int, b: int) -> int:
    return offset_distance(_as_spec(spec).t, b - a)


def distance_array(t: int, nmax: int) -> np.ndarray:
    """``dist(0, n)`` for ``n = 0..nmax`` as an int64 array.

    ``s + |n - s*t|`` is convex in ``s``, so only the two jump counts
    bracketing ``n/t`` need evaluating.
    """
    q, r = np.divmod(np.arange(nmax + 1, dtype=np.int64), t)
    return np.minimum(q + r, q + 1 + t - r)


@dataclass(frozen=True)
class ForbiddenOffsetSet:
    """Positive offsets ``n`` with ``dist(0, n) <= color``.

    Two vertices at such an offset may not both carry ``color``. ``mask`` is a
    dense boolean vector of length ``color*t + 1`` (index ``n``).
    """

    spec: DistanceSpec
    color: int
    offsets: tuple[int, ...]
    mask: np.ndarray = field(repr=False, compare=False)

    def __contains__(self, n: int) -> bool:
        return 0 < n < len(self.mask) and bool(self.mask[n])

    def __iter__(self):
        return iter(self.offsets)

    def __len__(self) -> int:
        return len(self.offsets)

    @property
    def reach(self) -> int:
        """Largest offset that can ever be forbidden (``color * t``)."""
        return self.color * self.spec.t


@lru_cache(maxsize=4096)
def _offsets(t: int, v: int) -> tuple[int, ...]:
    dist = distance_array(t, v * t)
    return tuple(int(n) for n in np.flatnonzero(dist[1:] <= v) + 1)


def forbidden_offsets(spec, v: int) -> ForbiddenOffsetSet:
    spec = _as_spec(spec)
    if v < 1:
        raise ValueError("color must be >= 1")
    offs = _offsets(spec.t, v)
    mask = np.zeros(v * spec.t + 1, dtype=np.uint8)
    mask[list(offs)] = 1
    mask.setflags(write=False)
    return ForbiddenOffsetSet(spec, v, offs, mask)


def forbidden_table(spec, max_color: int) -> np.ndarray:
    """Dense ``(max_color+1, max_color*t+1)`` uint8 table; row ``v`` is the
    mask of :func:`forbidden_offsets` for color ``v`` (row 0 unused)."""
    spec = _as_spec(spec)
    width = max_color * spec.t + 1
    table = np.zeros((max_color + 1, width), dtype=np.uint8)
    for v in range(1, max_color + 1):
        table[v, list(_offsets(spec.t, v))] = 1
    return table


def offset_csr(spec, max_color: int) -> tuple[np.ndarray, np.ndarray]:
    """Forbidden offsets of colors ``0..max_color`` packed as (ptr, values):
    color ``v`` owns ``values[ptr[v]:ptr[v+1]]``, ascending. Color 0 is empty."""
    spec = _as_spec(spec)
    rows = [()] + [_offsets(spec.t, v) for v in range(1, max_color + 1)]
    ptr = np.zeros(max_color + 2, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    vals = np.fromiter((n for r in rows for n in r), dtype=np.int64, count=int(ptr[-1]))
    return ptr, vals


def window_diameter(spec, m: int) -> int:
    """Diameter, in the metric of D(1, t), of any ``m`` consecutive integers."""
    spec = _as_spec(spec)
    if m < 1:
        raise ValueError("window length must be >= 1")
    return max((offset_distance(spec.t, n) for n in range(1, m)), default=0)


def max_window_for_color(spec, v: int) -> int:
    """Largest ``m`` such that any ``m`` consecutive vertices are pairwise
    within distance ``v``; such a window holds at most one vertex of color v.
    """
    spec = _as_spec(spec)
    if v < 1:
        raise ValueError("color must be >= 1")
    m = 1
    while offset_distance(spec.t, m) <= v:
        m += 1
    return m


@dataclass(frozen=True)
class GridEmbedding:
    """The grid ``[0, width) x [0, height)`` placed in D(1, t) by
    ``(x, y) -> y + x*t``: y runs along unit steps, x along t-jumps."""

    spec: DistanceSpec
    width: int
    height: int

    def __call__(self, x: int, y: int) -> int:
        return y + x * self.spec.t

    def vertices(self) -> list[int]:
        return [self(x, y) for x in range(self.width) for y in range(self.height)]

    def check(self) -> None:
        """Raise ``ValueError`` unless the map is injective and sends grid
        edges to edges of D(1, t)."""
        seen = set(self.vertices())
        if len(seen) != self.width * self.height:
            raise ValueError("grid embedding is not injective")
        t = self.spec.t
        for x in range(self.width):
            for y in range(self.height):
                here = self(x, y)
                for dx, dy in ((1, 0), (0, 1)):
                    if x + dx < self.width and y + dy < self.height:
                        if abs(self(x + dx, y + dy) - here) not in (1, t):
                            raise ValueError(f"grid edge at {(x, y)} not preserved")


# The 15 x 9 square grid admits no packing 11-coloring; imported result, not
# re-proved here.
GRID_WIDTH, GRID_HEIGHT, GRID_BOUND = 15, 9, 12


@dataclass(frozen=True)
class GridBound:
    bound: int
    embedding: GridEmbedding


def grid_lower_bound(spec) -> Optional[GridBound]:
    """Lower bound 12 on the packing chromatic number via a 15 x 9 grid
    subgraph, available when ``t >= 9``; ``None`` otherwise."""
    spec = _as_spec(spec)
    if spec.t < GRID_HEIGHT:
        return None
    emb = GridEmbedding(spec, GRID_WIDTH, GRID_HEIGHT)
    emb.check()
    return GridBound(GRID_BOUND, emb)
