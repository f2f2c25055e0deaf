"""Explicit periodic packing colorings of D(1, t) for large t.

Write a vertex as ``n = a + b*t`` with ``0 <= a < t``. The *a-band* is the
arithmetic progression ``{a + b*t}``; it induces a path along ``b``. The
*i-strip* is the union of bands ``i..i+23``; inside it, unit steps move
``a`` and t-jumps move ``b``, so it contains a copy of the square lattice.

A coloring of D(1, t) is assembled column by column:

* strips take a 24 x 24 toroidal packing 17-coloring of the square lattice,
  color 1 on one checkerboard class;
* a band between two strips takes the word ``1,18,1,19,...,1,35`` with color 1
  on every other vertex, shifted along ``b`` so that equal colors on bands
  25 columns apart stay far enough apart;
* for even t, the last band takes a packing coloring of the path with colors
  18..56, which never clashes with anything since no other segment uses them.

Neighbouring segments alternate the checkerboard phase so color 1 never sits
on two adjacent vertices. The assembled word has period ``R*t`` where ``R`` is
the lcm of the segment periods along ``b``, and it is only reported after
:func:`~packcolor.pattern.verify_periodic` accepts it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np

from . import _backend
from .graph import DistanceSpec, _as_spec, distance, offset_csr
from .pattern import DATA_DIR, PeriodicColoring, Verdict, verify_periodic

SIDE = 24
STRIP_COLORS = 17
BAND_BASE = 18  # band words use 1 and 18..35
PATH_BASE = 18  # the even-case special band uses 18..56


class ConstructionError(RuntimeError):
    """Assembly failed; ``verdict`` carries the violating pair if any."""

    def __init__(self, message: str, verdict: Optional[Verdict] = None):
        super().__init__(message)
        self.verdict = verdict


class LatticeFormatError(ValueError):
    pass


# -- bands and strips ---------------------------------------------------------

@dataclass(frozen=True)
class Band:
    """Vertices ``{i + b*t : b in Z}``."""

    spec: DistanceSpec
    i: int

    def __contains__(self, n: int) -> bool:
        return n % self.spec.t == self.i

    def vertices(self, lo: int, hi: int) -> list[int]:
        """Members in ``[lo, hi)``."""
        t = self.spec.t
        first = lo + (self.i - lo) % t
        return list(range(first, hi, t))


@dataclass(frozen=True)
class Strip:
    """Union of bands ``i..i+23``."""

    spec: DistanceSpec
    i: int

    @property
    def bands(self) -> range:
        return range(self.i, self.i + SIDE)

    def __contains__(self, n: int) -> bool:
        return n % self.spec.t in self.bands

    def vertices(self, lo: int, hi: int) -> list[int]:
        return [n for n in range(lo, hi) if n in self]


def i_band(spec, i: int) -> Band:
    spec = _as_spec(spec)
    if not 0 <= i < spec.t:
        raise IndexError(f"band index {i} outside [0, {spec.t - 1}]")
    return Band(spec, i)


def i_strip(spec, i: int) -> Strip:
    spec = _as_spec(spec)
    if not 0 <= i <= spec.t - SIDE:
        raise IndexError(f"strip index {i} outside [0, {spec.t - SIDE}]")
    return Strip(spec, i)


# -- the square-lattice pattern -----------------------------------------------

@dataclass(frozen=True)
class LatticePattern:
    """``cells[a][b]``: color of strip column ``a``, row ``b`` (both mod 24)."""

    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int32)
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        self.validate()

    @property
    def side(self) -> int:
        return SIDE

    @property
    def parity(self) -> int:
        """``a + b`` parity of the cells colored 1."""
        return int((np.argwhere(self.cells == 1)[0].sum()) % 2)

    def validate(self) -> None:
        c = self.cells
        if c.shape != (SIDE, SIDE):
            raise LatticeFormatError(f"lattice pattern must be {SIDE}x{SIDE}, got {c.shape}")
        if c.min() < 1 or c.max() > STRIP_COLORS:
            raise LatticeFormatError(f"lattice colors must lie in [1, {STRIP_COLORS}]")
        a, b = np.indices(c.shape)
        ones = c == 1
        if not (np.array_equal(ones, (a + b) % 2 == 0) or np.array_equal(ones, (a + b) % 2 == 1)):
            raise LatticeFormatError("color 1 must fill exactly one checkerboard class")
        bad = lattice_conflict(c)
        if bad is not None:
            (p, q), v = bad
            raise LatticeFormatError(f"cells {p} and {q} share color {v} within torus distance {v}")


def lattice_conflict(cells: np.ndarray):
    """First pair of same-colored cells within torus Manhattan distance of
    their color, as ``((cell, cell), color)``, or ``None``."""
    n = len(cells)
    for v in np.unique(cells):
        pts = np.argwhere(cells == v)
        d = np.abs(pts[:, None, :] - pts[None, :, :])
        dist = np.minimum(d, n - d).sum(axis=2)
        np.fill_diagonal(dist, v + 1)
        hit = np.argwhere(dist <= v)
        if len(hit):
            i, j = hit[0]
            return (tuple(pts[i].tolist()), tuple(pts[j].tolist())), int(v)
    return None


def read_lattice(text: str) -> LatticePattern:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.replace(",", " ").split()])
        except ValueError as exc:
            raise LatticeFormatError(f"line {lineno}: {exc}") from None
    if len(rows) != SIDE or any(len(r) != SIDE for r in rows):
        raise LatticeFormatError(f"expected {SIDE} lines of {SIDE} integers")
    return LatticePattern(np.array(rows))


@lru_cache(maxsize=1)
def default_lattice() -> LatticePattern:
    return read_lattice((DATA_DIR / "lattice24.txt").read_text())


def load_lattice(path=None) -> LatticePattern:
    return default_lattice() if path is None else read_lattice(Path(path).read_text())


# -- band words ---------------------------------------------------------------

@dataclass(frozen=True)
class BandPattern:
    """Word ``1, k, 1, k+1, ..., 1, 2k-1`` placed on a band; row ``b`` of the
    band gets ``word[(b - shift) mod 2k]``, i.e. the word starts at vertex
    ``i + shift*t``."""

    k: int
    shift: int = 0

    @property
    def word(self) -> tuple[int, ...]:
        return band_word(self.k)

    @property
    def period(self) -> int:
        return 2 * self.k

    def rows(self, count: int) -> np.ndarray:
        w = np.array(self.word, dtype=np.int32)
        return w[(np.arange(count) - self.shift) % self.period]


def band_word(k: int) -> tuple[int, ...]:
    if k <= 2:
        raise ValueError("band words need k > 2")
    out = []
    for v in range(k, 2 * k):
        out += [1, v]
    return tuple(out)


def band_coloring(spec, k: int, start: int = 0, band: int = 0) -> dict[int, int]:
    """Colors of band ``band`` over one period of the word, keyed by vertex;
    ``start`` is the row where the word begins."""
    spec = _as_spec(spec)
    pat = BandPattern(k, start)
    return {band + b * spec.t: int(c) for b, c in enumerate(pat.rows(pat.period))}


def path_gaps_ok(word, cyclic: bool = True) -> bool:
    """Same-colored entries of ``word`` are more than their color apart along
    the path (cyclically when ``cyclic``)."""
    w = list(word)
    p = len(w)
    for i, v in enumerate(w):
        for n in range(1, v + 1):
            j = i + n
            if cyclic:
                if w[j % p] == v:
                    return False
            elif j < p and w[j] == v:
                return False
    return True


def band_pair_distance(spec, shift: int, gap: int = 25, k: int = BAND_BASE) -> int:
    """Least distance in D(1, t) between equal colors >= k on two bands ``gap``
    columns apart whose words are offset by ``shift`` rows."""
    spec = _as_spec(spec)
    word = band_word(k)
    p = len(word)
    best = None
    for b1, v in enumerate(word):
        if v == 1:
            continue
        b2 = word.index(v)
        # the second band's word starts at row ``shift``
        for m in range(-2, 3):
            rows = b2 + shift + m * p - b1
            d = distance(spec, 0, gap + rows * spec.t)
            best = d if best is None else min(best, d)
    return best


def shift_distance_bound(shift: int, gap: int = 25, period: int = 36) -> int:
    """``min(shift, period - shift) + gap``: the row offset plus the columns."""
    s = shift % period
    return min(s, period - s) + gap


# -- path pattern for the special band -----------------------------------------

@dataclass(frozen=True)
class PathPattern:
    k: int
    word: tuple[int, ...]
    method: str

    @property
    def period(self) -> int:
        return len(self.word)


def _path_offsets(hi: int):
    ptr = np.zeros(hi + 2, dtype=np.int64)
    vals = []
    for v in range(hi + 1):
        vals += list(range(1, v + 1)) if v else []
        ptr[v + 1] = len(vals)
    return ptr, np.array(vals, dtype=np.int64)


def _path_dfs(k: int, period: int, max_nodes: int) -> Optional[list[int]]:
    """Leftmost solution of the cyclic word problem over colors ``k..3k+2``
    for a fixed period: positions left to right, colors ascending."""
    hi = 3 * k + 2
    w = [0] * period
    nodes = 0

    def ok(i, v):
        if v >= period:  # the color would meet its own translate
            return False
        for n in range(1, v + 1):
            if i - n >= 0 and w[i - n] == v:
                return False
            j = (i + n) % period
            if j < i and w[j] == v:  # wrapped onto an already placed entry
                return False
        return True

    i = 0
    w[0] = k - 1
    while i >= 0:
        w[i] += 1
        while w[i] <= hi and not ok(i, w[i]):
            w[i] += 1
        if w[i] > hi:
            w[i] = 0
            i -= 1
            continue
        nodes += 1
        if nodes > max_nodes:
            return None
        if i == period - 1:
            return w
        i += 1
        w[i] = k - 1
    return None


def _load_path(k: int) -> Optional[PathPattern]:
    path = DATA_DIR / f"path_k{k}.txt"
    if not path.exists():
        return None
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    head = dict(kv.split("=") for kv in lines[0].split())
    word = tuple(int(x) for x in ",".join(lines[1:]).split(",") if x.strip())
    if int(head["k"]) != k or int(head["period"]) != len(word):
        raise ValueError(f"corrupt path pattern file {path.name}")
    return PathPattern(k, word, f"shipped ({path.name})")


@lru_cache(maxsize=None)
def path_band_pattern(k: int, max_period: int = 40, max_nodes: int = 2_000_000,
                         anneal_periods: tuple[int, ...] = (), seed: int = 0) -> PathPattern:
    """Periodic packing coloring of the path with colors in ``[k, 3k+2]``.

    Search order: a shipped pattern for this ``k`` if present; otherwise
    backtracking over periods ``1..max_period`` (each with ``max_nodes``);
    otherwise annealing over ``anneal_periods``. Whatever is returned has
    passed the path packing check; failure raises ``ConstructionError``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    hi = 3 * k + 2
    found = _load_path(k)
    if found is None:
        for p in range(1, max_period + 1):
            w = _path_dfs(k, p, max_nodes)
            if w is not None:
                found = PathPattern(k, tuple(w), f"backtracking, period {p}")
                break
    if found is None and anneal_periods:
        from .anneal import anneal_words
        ptr, offs = _path_offsets(hi)
        for p in anneal_periods:
            w, e, _, _ = anneal_words(p, k, hi, ptr, offs, seed, cooling=0.995,
                                      steps_per_temperature=1000, levels=20000,
                                      restarts=20, patience=5000)
            if e == 0:
                found = PathPattern(k, tuple(int(x) for x in w), f"annealing, period {p}")
                break
    if found is None:
        raise ConstructionError(f"no path pattern with colors {k}..{hi} within the search budget")
    if min(found.word) < k or max(found.word) > hi or not path_gaps_ok(found.word):
        raise ConstructionError(f"path pattern for k={k} ({found.method}) fails the packing check")
    return found


# -- assembly -----------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    kind: str  # "strip", "band" or "path-band"
    first: int  # first band (column) covered
    shift: int  # start row of the pattern, a multiple of t in vertex terms
    pattern: str

    @property
    def width(self) -> int:
        return SIDE if self.kind == "strip" else 1

    @property
    def last(self) -> int:
        return self.first + self.width - 1


@dataclass
class SpiralLayout:
    spec: DistanceSpec
    r: int
    s: int
    case: str  # "odd" or "even"
    segments: list[Segment]

    def check(self) -> None:
        col = 0
        for seg in self.segments:
            if seg.first != col:
                raise ConstructionError(f"segment {seg} does not start at column {col}")
            col = seg.last + 1
        if col != self.spec.t:
            raise ConstructionError(f"segments cover {col} columns, t = {self.spec.t}")


def decompose(spec) -> tuple[str, int, int]:
    """``(case, r, s)`` with ``t = 24s + r`` (odd) or ``t = 24(s+2) + r``
    (even, ``0 < r <= 24``)."""
    t = _as_spec(spec).t
    if t % 2:
        s, r = divmod(t, SIDE)
        case = "odd"
    else:
        r = t % SIDE or SIDE
        s = (t - r) // SIDE - 2
        case = "even"
    if s < r or s < 1:
        need = 25 * r if case == "odd" else 25 * r + 48
        raise ConstructionError(f"t={t} is too small for the {case} decomposition (r={r}, needs t >= {need})")
    return case, r, s


def _odd_band_shift(j: int, r: int) -> int:
    if j == r:
        return -24
    if j == r - 1:
        return -13
    return 0 if j % 2 else -17


def layout(spec) -> SpiralLayout:
    spec = _as_spec(spec)
    case, r, s = decompose(spec)
    segs: list[Segment] = []
    if case == "odd":
        for j in range(1, r + 1):
            segs.append(Segment("strip", 25 * (j - 1), 0 if j % 2 else -1, "lattice24"))
            segs.append(Segment("band", 25 * j - 1, _odd_band_shift(j, r), f"band{BAND_BASE}"))
        for j in range(r + 1, s + 1):
            segs.append(Segment("strip", 24 * (j - 1) + r, -1, "lattice24"))
    else:
        segs.append(Segment("strip", 0, 0, "lattice24"))
        for j in range(1, r):
            segs.append(Segment("strip", 25 * j - 1, 0 if j % 2 else -1, "lattice24"))
            segs.append(Segment("band", 25 * j + 23, 0 if j % 2 else -17, f"band{BAND_BASE}"))
        for j in range(r, s + 2):
            segs.append(Segment("strip", 24 * j + r - 1, -1, "lattice24"))
        segs.append(Segment("path-band", spec.t - 1, 0, f"path{PATH_BASE}"))
    lay = SpiralLayout(spec, r, s, case, segs)
    lay.check()
    return lay


def strip_rows(lattice: LatticePattern, shift: int, rows: int) -> np.ndarray:
    """``(24, rows)`` colors of a strip whose pattern row 0 sits at row
    ``shift``; column ``a``, row ``b`` gets ``cells[a][(b - shift) mod 24]``.
    A pattern with color 1 on odd cells is moved one row so its 1s sit on
    ``a + b`` even like everything else."""
    off = shift + lattice.parity
    return lattice.cells[:, (np.arange(rows) - off) % SIDE]


def strip_coloring(spec, i: int, start: int = 0, lattice: Optional[LatticePattern] = None,
                   rows: int = SIDE) -> dict[int, int]:
    """Colors of strip ``i`` over ``rows`` rows, keyed by vertex."""
    spec = _as_spec(spec)
    i_strip(spec, i)
    lat = lattice or default_lattice()
    block = strip_rows(lat, start, rows)
    return {i + a + b * spec.t: int(block[a, b]) for a in range(SIDE) for b in range(rows)}


@dataclass
class Assembly:
    layout: SpiralLayout
    coloring: PeriodicColoring
    verdict: Verdict
    deviations: list[str]
    path: Optional[PathPattern] = None

    @property
    def period(self) -> int:
        return self.coloring.period

    def report(self) -> str:
        lay = self.layout
        t = lay.spec.t
        lines = [f"t={t} ({lay.case} case) r={lay.r} s={lay.s}",
                 f"{'kind':<13} {'bands':>11}  {'start':>6}  pattern"]
        for seg in lay.segments:
            rng = f"{seg.first}..{seg.last}"
            lines.append(f"{seg.kind:<13} {rng:>11}  {seg.shift:>5}t  {seg.pattern}")
        if self.path is not None:
            lines.append(f"special band word: period {self.path.period}, {self.path.method}")
        for d in self.deviations:
            lines.append(f"deviation: {d}")
        lines.append(f"period = {self.period} = {self.period // t}t")
        lines.append(f"max color = {self.coloring.colors}")
        lines.append("verdict: " + ("valid" if self.verdict.valid else "violation"))
        hist = self.coloring.histogram()
        lines.append("histogram: " + " ".join(f"{v}:{n}" for v, n in hist.items()))
        return "\n".join(lines)


def _build(lay: SpiralLayout, lattice: LatticePattern, path: Optional[PathPattern]) -> np.ndarray:
    t = lay.spec.t
    periods = [SIDE] + [2 * BAND_BASE] + ([path.period] if path else [])
    rows = math.lcm(*periods)
    grid = np.zeros((t, rows), dtype=np.int32)  # grid[a, b] colors vertex a + b*t
    for seg in lay.segments:
        if seg.kind == "strip":
            grid[seg.first:seg.last + 1] = strip_rows(lattice, seg.shift, rows)
        elif seg.kind == "band":
            grid[seg.first] = BandPattern(BAND_BASE, seg.shift).rows(rows)
        else:
            w = np.array(path.word, dtype=np.int32)
            grid[seg.first] = w[(np.arange(rows) - seg.shift) % len(w)]
    # vertex n = a + b*t, so the word is the grid read row by row
    return np.ascontiguousarray(grid.T.reshape(-1))


def assemble(spec, lattice: Optional[LatticePattern] = None, fallback: bool = True,
             backend: Optional[str] = None) -> Assembly:
    """Build and verify the coloring for ``t``; see the module docstring.

    If the prescribed band shifts fail verification, bands are re-shifted one
    at a time (offsets 1..35 rows from the original) until the word verifies;
    each change is listed in the report.
    """
    spec = _as_spec(spec)
    lay = layout(spec)
    lat = lattice or default_lattice()
    path = path_band_pattern(PATH_BASE) if lay.case == "even" else None
    word = _build(lay, lat, path)
    verdict = verify_periodic(PeriodicColoring(spec, word), backend)
    deviations: list[str] = []
    if not verdict.valid and fallback:
        lay, word, verdict, deviations = _repair(lay, lat, path, verdict, backend)
    coloring = PeriodicColoring(spec, word)
    if not verdict.valid:
        raise ConstructionError(f"assembly for t={spec.t} fails verification: {verdict.violation}",
                                verdict)
    return Assembly(lay, coloring, verdict, deviations, path)


def _repair(lay, lat, path, verdict, backend):
    """Coordinate descent on band shifts: each pass tries every shift of each
    band and keeps the one with the fewest violating pairs."""
    spec = lay.spec
    kern = _backend.get(backend)
    ptr, offs = offset_csr(spec, 3 * PATH_BASE + 2 if path else 2 * BAND_BASE - 1)

    def cost(segs):
        word = _build(SpiralLayout(spec, lay.r, lay.s, lay.case, segs), lat, path)
        return int(kern.count_violations(word, ptr, offs))

    segs = list(lay.segments)
    best = cost(segs)
    for _ in range(4):
        improved = False
        for n, seg in enumerate(segs):
            if seg.kind != "band" or best == 0:
                continue
            for k in range(1, 2 * BAND_BASE):
                trial = segs[:n] + [Segment(seg.kind, seg.first, seg.shift - k, seg.pattern)] + segs[n + 1:]
                c = cost(trial)
                if c < best:
                    best, segs, improved = c, trial, True
        if best == 0 or not improved:
            break
    deviations = [f"band {a.first}: start {a.shift}t -> {b.shift}t"
                  for a, b in zip(lay.segments, segs) if a.shift != b.shift]
    lay = SpiralLayout(spec, lay.r, lay.s, lay.case, segs)
    word = _build(lay, lat, path)
    return lay, word, verify_periodic(PeriodicColoring(spec, word), backend), deviations


def sweep_rows() -> list[tuple[int, int]]:
    """``(r, t)`` with the smallest t covered for each residue: odd ``t = 25r``,
    even ``t = 25r + 48``."""
    odd = [(r, 25 * r) for r in range(1, 24, 2)]
    even = [(r, 25 * r + 48) for r in range(2, 25, 2)]
    return odd + even
