"""Periodic and finite colorings of D(1, t) and their verification.

A :class:`PeriodicColoring` with word ``w`` colors every integer ``i`` by
``w[i mod p]``. Verification only inspects pairs ``(i, i+n)`` with ``i`` in one
period and ``n`` a forbidden offset of the color; since ``dist(0, n) >=
ceil(n/t)``, offsets beyond ``v*t`` can never violate color ``v``, and by
periodicity those pairs cover every pair of integers.

Pattern files look like::

    # optional comment lines
    t=4 period=320 colors=15
    1,3,1,2,4,1,5,1,8,2,...
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from .graph import DistanceSpec, _as_spec, distance, offset_csr


class PatternFormatError(ValueError):
    """Malformed pattern text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def _as_word(entries) -> np.ndarray:
    word = np.ascontiguousarray(entries, dtype=np.int32)
    if word.ndim != 1:
        raise ValueError("a coloring word must be one-dimensional")
    return word


class PeriodicColoring:
    """Coloring ``c(i) = word[i mod period]`` of all integers."""

    def __init__(self, spec, word: Sequence[int]):
        self.spec = _as_spec(spec)
        self.word = _as_word(word)
        if len(self.word) == 0:
            raise ValueError("period must be at least 1")
        self.word.setflags(write=False)

    @property
    def period(self) -> int:
        return len(self.word)

    @property
    def colors(self) -> int:
        return int(self.word.max())

    def __getitem__(self, i: int) -> int:
        return int(self.word[i % self.period])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicColoring):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.word, other.word)

    def __repr__(self) -> str:
        return f"PeriodicColoring(t={self.spec.t}, period={self.period}, colors={self.colors})"

    def histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.word, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


class FiniteColoring:
    """Colors of the vertices ``start, start+1, ...``; 0 marks uncolored."""

    def __init__(self, spec, entries: Sequence[int], start: int = 0):
        self.spec = _as_spec(spec)
        self.start = start
        self.entries = _as_word(entries)
        if len(self.entries) and self.entries.min() < 0:
            raise ValueError("colors must be >= 0 (0 = uncolored)")

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteColoring):
            return NotImplemented
        return (self.spec, self.start) == (other.spec, other.start) and np.array_equal(
            self.entries, other.entries)

    def __repr__(self) -> str:
        return f"FiniteColoring(t={self.spec.t}, start={self.start}, entries={self.entries.tolist()})"


@dataclass(frozen=True)
class Violation:
    """Two vertices both colored ``color`` at distance at most ``color``."""

    i: int
    j: int
    color: int
    distance: int

    @property
    def positions(self) -> tuple[int, int]:
        return self.i, self.j


@dataclass(frozen=True)
class Verdict:
    violation: Optional[Violation] = None

    @property
    def valid(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.valid

    def to_record(self) -> dict:
        v = self.violation
        return {
            "verdict": "valid" if v is None else "violation",
            "positions": None if v is None else [v.i, v.j],
            "color": None if v is None else v.color,
            "distance": None if v is None else v.distance,
        }

    def describe(self) -> str:
        v = self.violation
        if v is None:
            return "verdict: valid"
        return (f"verdict: violation\n  positions: {v.i} {v.j}\n  color: {v.color}\n"
                f"  distance: {v.distance}")


def _violation(spec: DistanceSpec, i: int, j: int, color: int) -> Violation:
    return Violation(i, j, color, distance(spec, i, j))


def verify_periodic(coloring: PeriodicColoring, backend: Optional[str] = None) -> Verdict:
    """Check the packing condition for the whole of Z; the first violation in
    lexicographic ``(i, j)`` order is reported, ``i`` in ``[0, period)``."""
    word = coloring.word
    if word.min() < 1:
        bad = int(np.flatnonzero(word < 1)[0])
        raise ValueError(f"entry {bad} is {int(word[bad])}; periodic colorings need colors >= 1")
    ptr, offs = offset_csr(coloring.spec, coloring.colors)
    i, j = _backend.get(backend).first_violation(word, ptr, offs)
    if i < 0:
        return Verdict()
    return Verdict(_violation(coloring.spec, i, j, int(word[i])))


def verify_finite(coloring: FiniteColoring, backend: Optional[str] = None) -> Verdict:
    """Check colored vertices pairwise; uncolored ones are unconstrained."""
    entries = coloring.entries
    if len(entries) == 0 or entries.max() == 0:
        return Verdict()
    ptr, offs = offset_csr(coloring.spec, int(entries.max()))
    i, j = _backend.get(backend).first_violation_finite(entries, ptr, offs)
    if i < 0:
        return Verdict()
    s = coloring.start
    return Verdict(_violation(coloring.spec, s + i, s + j, int(entries[i])))


_HEADER = re.compile(r"^\s*t\s*=\s*(\d+)\s+period\s*=\s*(\d+)\s+colors\s*=\s*(\d+)\s*$")
_TOKEN = re.compile(r"[^\s,]+")


def read_pattern(text: str) -> PeriodicColoring:
    header = None
    values: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise PatternFormatError("expected header 't=<int> period=<int> colors=<int>'",
                                         lineno, 1)
            header = tuple(int(g) for g in m.groups())
            continue
        for tok in _TOKEN.finditer(line):
            if not tok.group().isdigit():
                raise PatternFormatError(f"not a color: {tok.group()!r}", lineno, tok.start() + 1)
            v = int(tok.group())
            if v < 1:
                raise PatternFormatError("colors must be >= 1", lineno, tok.start() + 1)
            values.append(v)
    if header is None:
        raise PatternFormatError("missing header")
    t, period, colors = header
    if len(values) != period:
        raise PatternFormatError(f"header declares period {period} but {len(values)} entries follow")
    if period == 0:
        raise PatternFormatError("period must be at least 1")
    if max(values) != colors:
        raise PatternFormatError(f"header declares {colors} colors but the largest entry is {max(values)}")
    try:
        return PeriodicColoring(DistanceSpec(t), values)
    except ValueError as exc:
        raise PatternFormatError(str(exc)) from exc


def write_pattern(coloring: PeriodicColoring, comments: Iterable[str] = (), per_line: int = 40) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"t={coloring.spec.t} period={coloring.period} colors={coloring.colors}")
    w = coloring.word.tolist()
    for k in range(0, len(w), per_line):
        out.append(",".join(map(str, w[k:k + per_line])))
    return "\n".join(out) + "\n"


def load_pattern(path) -> PeriodicColoring:
    return read_pattern(Path(path).read_text())


def save_pattern(coloring: PeriodicColoring, path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(write_pattern(coloring, comments))


DATA_DIR = Path(__file__).with_name("data")


def period320_pattern() -> PeriodicColoring:
    """The shipped period-320 packing 15-coloring of D(1, 4)."""
    return load_pattern(DATA_DIR / "d1_4_period320.pat")
