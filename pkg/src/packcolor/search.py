"""Exhaustive backtracking prover for lower bounds on the packing chromatic
number of D(1, t).

If no packing coloring of the vertices ``1..k`` with colors ``1..c`` puts
color ``c`` on vertex 1, then D(1, t) has no packing ``c``-coloring: a
coloring of the whole graph either uses ``c`` somewhere (translate that vertex
to 1, the graph is vertex-transitive) or never uses it (recolor any single
vertex with ``c``, which stays a packing), and restricting it to ``1..k``
only drops constraints.

Positions are filled left to right with colors tried in ascending order, so
the first witness found is deterministic. The search state is a single int32
array plus a depth, which makes checkpoints exact: a resumed run explores
precisely the subtree an uninterrupted run would have, with the same node
count.
"""
from __future__ import annotations

import hashlib
import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, _backend
from .graph import DistanceSpec, _as_spec, forbidden_table
from .pattern import FiniteColoring, verify_finite

AUTO = "auto"

FEASIBLE, INFEASIBLE, INDETERMINATE = "feasible", "infeasible", "indeterminate"

_EXHAUSTED, _FOUND, _PAUSED = 0, 1, 2

# kernel calls are chunked so budgets and checkpoints are honoured promptly
_CHUNK = 1 << 22


class CheckpointError(ValueError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


@dataclass(frozen=True)
class SearchProblem:
    """Color vertices ``1..k`` of D(1, t) with colors ``1..c``.

    ``fix_first`` forces the color of vertex 1; it defaults to ``c`` and
    ``None`` disables it.
    """

    spec: DistanceSpec
    c: int
    k: int
    fix_first: Optional[int] = AUTO  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "spec", _as_spec(self.spec))
        if self.fix_first == AUTO:
            object.__setattr__(self, "fix_first", self.c)
        if self.c < 1 or self.k < 1:
            raise ValueError("need c >= 1 and k >= 1")
        if self.fix_first is not None and not 1 <= self.fix_first <= self.c:
            raise ValueError("fix_first must lie in [1, c]")

    @property
    def first_range(self) -> tuple[int, int]:
        if self.fix_first is None:
            return 1, self.c
        return self.fix_first, self.fix_first


@dataclass
class SearchOutcome:
    status: str
    nodes: int
    elapsed: float
    witness: Optional[FiniteColoring] = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    @property
    def infeasible(self) -> bool:
        return self.status == INFEASIBLE

    @property
    def indeterminate(self) -> bool:
        return self.status == INDETERMINATE


@dataclass
class SearchState:
    """Resumable DFS state: ``colors[:depth]`` placed, ``colors[depth]`` the
    last color tried at ``depth``; nothing below ``floor`` is revisited."""

    problem: SearchProblem
    colors: np.ndarray
    depth: int = 0
    floor: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    done: Optional[str] = None
    _forb: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def start(cls, problem: SearchProblem, prefix=()) -> "SearchState":
        colors = np.zeros(problem.k + 1, dtype=np.int32)
        colors[:len(prefix)] = prefix
        return cls(problem, colors, depth=len(prefix), floor=len(prefix))

    @property
    def forb(self) -> np.ndarray:
        if self._forb is None:
            self._forb = forbidden_table(self.problem.spec, self.problem.c)
        return self._forb

    def step(self, max_nodes: int, backend: Optional[str] = None) -> int:
        """Advance by at most ``max_nodes`` placements; returns kernel status."""
        p = self.problem
        lo, hi = p.first_range
        status, depth, nodes = _backend.get(backend).dfs_extend(
            self.forb, p.spec.t, p.c, p.k, lo, hi, self.floor, self.colors, self.depth, max_nodes)
        self.depth = depth
        self.nodes += nodes
        if status == _FOUND:
            self.done = FEASIBLE
        elif status == _EXHAUSTED:
            self.done = INFEASIBLE
        return status

    def witness(self) -> FiniteColoring:
        return FiniteColoring(self.problem.spec, self.colors[:self.problem.k].copy(), start=1)


# checkpoint layout (little endian):
#   magic b"PCKB" | u16 format | u16 len(version) | version utf-8
#   | 7 x i64: t, c, k, fix_first (-1 = none), floor, depth, nodes | f64 elapsed
#   | i32 x (k+1) colors | 32-byte sha256 of everything before it
_MAGIC = b"PCKB"
_FORMAT = 1
_FIELDS = struct.Struct("<7qd")


def checkpoint(state: SearchState) -> bytes:
    p = state.problem
    ver = __version__.encode()
    body = b"".join([
        _MAGIC, struct.pack("<HH", _FORMAT, len(ver)), ver,
        _FIELDS.pack(p.spec.t, p.c, p.k, -1 if p.fix_first is None else p.fix_first,
                     state.floor, state.depth, state.nodes, state.elapsed),
        state.colors.astype("<i4").tobytes(),
    ])
    return body + hashlib.sha256(body).digest()


def resume(blob: bytes) -> SearchState:
    if len(blob) < 40 or blob[:4] != _MAGIC:
        raise CheckpointError("not a search checkpoint")
    body, digest = blob[:-32], blob[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CheckpointError("checkpoint checksum mismatch (corrupt blob)")
    fmt, vlen = struct.unpack_from("<HH", body, 4)
    ver = body[8:8 + vlen].decode()
    if fmt != _FORMAT or ver != __version__:
        raise CheckpointVersionError(
            f"checkpoint written by format {fmt} / version {ver}, this is {_FORMAT} / {__version__}")
    off = 8 + vlen
    t, c, k, fix, floor, depth, nodes, elapsed = _FIELDS.unpack_from(body, off)
    off += _FIELDS.size
    colors = np.frombuffer(body, dtype="<i4", count=k + 1, offset=off).astype(np.int32)
    problem = SearchProblem(DistanceSpec(t), c, k, None if fix < 0 else fix)
    return SearchState(problem, colors, depth=depth, floor=floor, nodes=nodes, elapsed=elapsed)


def run(state: SearchState, max_nodes: Optional[int] = None, max_seconds: Optional[float] = 86400.0,
        checkpoint_path=None, checkpoint_every: float = 600.0,
        backend: Optional[str] = None) -> SearchOutcome:
    """Drive ``state`` to a verdict or until a budget runs out.

    Exceeding a budget yields an ``indeterminate`` outcome, never
    ``infeasible``.
    """
    start = time.monotonic()
    base_elapsed = state.elapsed
    last_ckpt = start
    while state.done is None:
        chunk = _CHUNK
        if max_nodes is not None:
            left = max_nodes - state.nodes
            if left <= 0:
                break
            chunk = min(chunk, left)
        state.step(chunk, backend)
        now = time.monotonic()
        state.elapsed = base_elapsed + (now - start)
        if checkpoint_path is not None and now - last_ckpt >= checkpoint_every:
            Path(checkpoint_path).write_bytes(checkpoint(state))
            last_ckpt = now
        if state.done is None and max_seconds is not None and now - start >= max_seconds:
            break
    state.elapsed = base_elapsed + (time.monotonic() - start)
    if checkpoint_path is not None:
        Path(checkpoint_path).write_bytes(checkpoint(state))
    return _outcome(state)


def _outcome(state: SearchState) -> SearchOutcome:
    if state.done == FEASIBLE:
        witness = state.witness()
        verdict = verify_finite(witness)
        if not verdict.valid:  # pragma: no cover - kernel bug guard
            raise AssertionError(f"search produced an invalid witness: {verdict.violation}")
        return SearchOutcome(FEASIBLE, state.nodes, state.elapsed, witness)
    return SearchOutcome(state.done or INDETERMINATE, state.nodes, state.elapsed)


def _prefixes(problem: SearchProblem, depth: int, backend=None) -> tuple[list[np.ndarray], int]:
    """All valid prefixes of length ``depth`` in DFS order, plus the nodes
    spent enumerating them."""
    sub = SearchProblem(problem.spec, problem.c, depth, problem.fix_first)
    state = SearchState.start(sub)
    state._forb = forbidden_table(problem.spec, problem.c)
    out = []
    while True:
        state.step(1 << 62, backend)
        if state.done != FEASIBLE:
            break
        out.append(state.colors[:depth].copy())
        state.done = None
        state.depth = depth - 1
    return out, state.nodes


def _run_subtree(args):
    problem, prefix, max_nodes, max_seconds, backend = args
    state = SearchState.start(problem, prefix)
    outcome = run(state, max_nodes=max_nodes, max_seconds=max_seconds, backend=backend)
    return outcome.status, outcome.nodes, None if outcome.witness is None else outcome.witness.entries


def solve(problem: SearchProblem, workers: int = 1, split_depth: int = 6,
          max_nodes: Optional[int] = None, max_seconds: Optional[float] = 86400.0,
          checkpoint_path=None, backend: Optional[str] = None) -> SearchOutcome:
    """Run the search, optionally split over ``workers`` processes.

    Parallel runs enumerate the valid colorings of the first ``split_depth``
    positions and search each subtree independently; node counts are summed
    and the witness is the first one in DFS order. Node budgets apply per
    subtree when parallel.
    """
    if workers <= 1 or split_depth >= problem.k:
        if checkpoint_path is not None and Path(checkpoint_path).exists():
            state = resume(Path(checkpoint_path).read_bytes())
            if state.problem != problem:
                raise CheckpointError("checkpoint belongs to a different problem")
        else:
            state = SearchState.start(problem)
        return run(state, max_nodes, max_seconds, checkpoint_path, backend=backend)
    start = time.monotonic()
    prefixes, nodes = _prefixes(problem, split_depth, backend)
    status = INFEASIBLE
    witness = None
    jobs = [(problem, pre, max_nodes, max_seconds, backend) for pre in prefixes]
    with ProcessPoolExecutor(workers) as pool:
        for st, n, entries in pool.map(_run_subtree, jobs):
            nodes += n
            if st == FEASIBLE and witness is None:
                status, witness = FEASIBLE, FiniteColoring(problem.spec, entries, start=1)
            elif st == INDETERMINATE and status == INFEASIBLE:
                status = INDETERMINATE
    return SearchOutcome(status, nodes, time.monotonic() - start, witness)


def prove(problem: SearchProblem, **kw) -> SearchOutcome:
    """Try to show that colors ``1..c`` cannot color ``1..k``; an infeasible
    outcome proves the packing chromatic number exceeds ``c``."""
    return solve(problem, **kw)


def find_coloring(problem: SearchProblem, **kw) -> SearchOutcome:
    """First packing coloring of ``1..k`` in the documented search order."""
    return solve(problem, **kw)
