"""Density upper bounds for color classes and the counting contradiction.

If every window of ``m`` consecutive vertices holds at most ``M`` vertices
colored from ``{1..l}``, the classes ``1..l`` together have density at most
``M/m``; a single color ``v`` has density at most ``1/w`` where ``w`` is
:func:`~packcolor.graph.max_window_for_color`. A packing ``c``-coloring
covers everything, so these bounds must sum to at least 1. A total below 1,
computed exactly, shows that ``c`` colors do not suffice.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _backend
from .graph import DistanceSpec, _as_spec, forbidden_table, max_window_for_color
from .pattern import FiniteColoring, verify_finite

_FOUND, _PAUSED = 1, 2
_CHUNK = 1 << 22

COMPUTED = "computed"
PAPER_VALUE = "unverified-paper-value"


class Indeterminate(RuntimeError):
    """A search budget ran out before a bound was established."""


@dataclass(frozen=True)
class WindowBound:
    """At most ``max_colored`` of any ``m`` consecutive vertices can be
    colored from ``1..l``; ``certificate`` attains it."""

    spec: DistanceSpec
    l: int
    m: int
    max_colored: int
    certificate: Optional[FiniteColoring] = None
    nodes: int = 0
    elapsed: float = 0.0
    provenance: str = COMPUTED
    prefix_maxima: tuple[int, ...] = field(default=(), repr=False)


def max_colorable(spec, l: int, m: int, max_nodes: Optional[int] = None,
                  max_seconds: Optional[float] = None, backend: Optional[str] = None) -> WindowBound:
    """Exact maximum number of colored vertices in a window of length ``m``.

    Windows of length ``1, 2, ..., m`` are solved in turn; each answer is the
    previous one or one more, and the shorter answers bound what any suffix
    of the current window can still contribute.
    """
    spec = _as_spec(spec)
    if l < 1 or m < 1:
        raise ValueError("need l >= 1 and m >= 1")
    kern = _backend.get(backend)
    forb = forbidden_table(spec, l)
    best = [0]
    cert = np.zeros(m, dtype=np.int32)
    nodes = 0
    start = time.monotonic()
    for r in range(1, m + 1):
        target = best[-1] + 1
        bound = np.array(best + [target], dtype=np.int32)
        choice = np.full(r + 1, -1, dtype=np.int32)
        colors = np.zeros(r + 1, dtype=np.int32)
        depth, colored = 0, 0
        while True:
            chunk = _CHUNK if max_nodes is None else min(_CHUNK, max_nodes - nodes)
            if chunk <= 0:
                raise Indeterminate(f"node budget exhausted at window {r}")
            status, depth, colored, n = kern.maxcol_search(
                forb, spec.t, l, r, bound, target, choice, colors, depth, colored, chunk)
            nodes += n
            if status != _PAUSED:
                break
            if max_seconds is not None and time.monotonic() - start > max_seconds:
                raise Indeterminate(f"time budget exhausted at window {r}")
        if status == _FOUND:
            best.append(target)
            cert[:] = 0
            cert[:r] = colors[:r]
        else:
            best.append(best[-1])
    certificate = FiniteColoring(spec, cert, start=1)
    if not verify_finite(certificate).valid or np.count_nonzero(cert) != best[-1]:
        raise AssertionError("window certificate failed verification")  # pragma: no cover
    return WindowBound(spec, l, m, best[-1], certificate, nodes, time.monotonic() - start,
                       prefix_maxima=tuple(best))


@dataclass
class DensityLedger:
    spec: DistanceSpec
    colors: int
    split: int
    window: WindowBound
    terms: list[tuple[str, Fraction]]

    @property
    def total(self) -> Fraction:
        return sum((f for _, f in self.terms), Fraction(0))

    @property
    def contradiction(self) -> bool:
        """True when the bounds sum below 1, i.e. ``colors`` colors are too few."""
        return self.total < 1

    @property
    def lower_bound(self) -> Optional[int]:
        return self.colors + 1 if self.contradiction else None

    def decimal(self, places: int = 6) -> str:
        return _fixed(self.total, places)

    def report(self) -> str:
        lines = [f"t={self.spec.t} colors={self.colors} split={self.split} window={self.window.m}"]
        if self.window.provenance != COMPUTED:
            lines.append(f"window bound provenance: {self.window.provenance}")
        for label, f in self.terms:
            lines.append(f"  {label:<14} {str(f):>10}  {_fixed(f, 6)}")
        lines.append(f"total = {self.total} = {self.decimal()}")
        if self.contradiction:
            lines.append(f"verdict: total < 1, chi_rho(D(1,{self.spec.t})) >= {self.colors + 1}")
        else:
            lines.append("verdict: total >= 1, no bound")
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "t": self.spec.t, "colors": self.colors, "split": self.split, "window": self.window.m,
            "max_colored": self.window.max_colored, "provenance": self.window.provenance,
            "terms": [[label, str(f)] for label, f in self.terms],
            "total": str(self.total), "decimal": self.decimal(),
            "lower_bound": self.lower_bound,
        }


def _fixed(f: Fraction, places: int) -> str:
    """Round-half-up decimal rendering of a nonnegative fraction."""
    scaled = (f * 10 ** places * 2 + 1) // 2
    whole, frac = divmod(int(scaled), 10 ** places)
    return f"{whole}.{frac:0{places}d}"


def combine(spec, c: int, l: int, m: int, max_colored: Optional[int] = None,
            **search_kw) -> DensityLedger:
    """Sum the window bound for colors ``1..l`` with per-color bounds for
    ``l+1..c``. ``max_colored`` may be supplied instead of computed; it is then
    tagged as an unverified value."""
    spec = _as_spec(spec)
    if not 1 <= l <= c:
        raise ValueError("need 1 <= split <= colors")
    if max_colored is None:
        window = max_colorable(spec, l, m, **search_kw)
    else:
        if not 0 <= max_colored <= m:
            raise ValueError("max_colored must lie in [0, window]")
        window = WindowBound(spec, l, m, max_colored, provenance=PAPER_VALUE)
    terms = [(f"colors 1..{l}", Fraction(window.max_colored, m))]
    for v in range(l + 1, c + 1):
        terms.append((f"color {v}", Fraction(1, max_window_for_color(spec, v))))
    return DensityLedger(spec, c, l, window, terms)
