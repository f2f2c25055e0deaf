"""Command line interface.

Exit codes are the machine contract: 0 success / valid / feasible, 1 invalid
/ infeasible / a bound was established, 2 usage or input error, 3 budget
exhausted with no verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, _backend
from .graph import DistanceSpec, distance, grid_lower_bound
from .pattern import PatternFormatError, load_pattern, save_pattern, write_pattern
from .store import Ledger, LedgerCorruption, artifact_hash

OK, VERDICT, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"packcolor: {msg}", file=sys.stderr)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _spec(args) -> DistanceSpec:
    _need(args, "t")
    try:
        return DistanceSpec(args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------

def cmd_dist(args):
    spec = _spec(args)
    if len(args.vertices) not in (1, 2):
        raise UsageError("dist takes one offset or two vertices")
    a, b = args.vertices if len(args.vertices) == 2 else (0, args.vertices[0])
    d = distance(spec, a, b)
    print(d)
    return OK, "ok", {"distance": d}, {}


def cmd_verify(args):
    _need(args, "pattern")
    try:
        col = load_pattern(args.pattern)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.pattern}") from None
    except PatternFormatError as exc:
        raise UsageError(f"{args.pattern}: {exc}") from None
    if args.t is not None and args.t != col.spec.t:
        raise UsageError(f"--t {args.t} disagrees with the pattern header t={col.spec.t}")
    from .pattern import verify_periodic
    verdict = verify_periodic(col)
    print(f"t={col.spec.t} period={col.period} colors={col.colors}")
    print(verdict.describe())
    rec = verdict.to_record()
    return (OK if verdict.valid else VERDICT), rec["verdict"], rec, {
        "pattern": artifact_hash(Path(args.pattern).read_bytes())}


def _search(args, prove_mode: bool):
    from .search import SearchProblem, solve
    spec = _spec(args)
    _need(args, "colors", "length")
    fix = args.colors if prove_mode else None
    try:
        problem = SearchProblem(spec, args.colors, args.length, fix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = solve(problem, workers=args.threads, max_nodes=args.budget_nodes,
                max_seconds=args.budget_time, checkpoint_path=args.checkpoint)
    print(f"t={spec.t} colors={args.colors} length={args.length}: {out.status}")
    print(f"nodes: {out.nodes}  elapsed: {out.elapsed:.1f}s")
    counters = {"nodes": out.nodes, "elapsed": round(out.elapsed, 3)}
    if out.feasible:
        print("witness (verified): " + ",".join(map(str, out.witness.entries.tolist())))
        counters["witness"] = out.witness.entries.tolist()
    if out.infeasible and prove_mode:
        print(f"verdict: chi_rho(D(1,{spec.t})) >= {args.colors + 1}")
    code = {"feasible": OK, "infeasible": VERDICT, "indeterminate": BUDGET}[out.status]
    return code, out.status, counters, {}


def cmd_lb(args):
    return _search(args, True)


def cmd_find(args):
    return _search(args, False)


def cmd_maxcolor(args):
    from .density import Indeterminate, max_colorable
    spec = _spec(args)
    _need(args, "colors", "window")
    try:
        wb = max_colorable(spec, args.colors, args.window, max_nodes=args.budget_nodes,
                           max_seconds=args.budget_time)
    except Indeterminate as exc:
        print(f"indeterminate: {exc}")
        return BUDGET, "indeterminate", {}, {}
    print(wb.max_colored)
    print(f"certificate (verified): {','.join(map(str, wb.certificate.entries.tolist()))}")
    print(f"nodes: {wb.nodes}  elapsed: {wb.elapsed:.1f}s")
    return OK, str(wb.max_colored), {"max_colored": wb.max_colored, "nodes": wb.nodes}, {}


def cmd_density(args):
    from .density import Indeterminate, combine
    spec = _spec(args)
    _need(args, "colors", "split", "window")
    try:
        led = combine(spec, args.colors, args.split, args.window, max_colored=args.max_colored,
                      max_nodes=args.budget_nodes, max_seconds=args.budget_time)
    except Indeterminate as exc:
        print(f"indeterminate: {exc}")
        return BUDGET, "indeterminate", {}, {}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(led.report())
    rec = led.to_record()
    return (VERDICT if led.contradiction else OK), rec["decimal"], rec, {}


def cmd_construct(args):
    from .construct import ConstructionError, assemble, decompose
    spec = _spec(args)
    try:
        decompose(spec)
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None
    try:
        asm = assemble(spec)
    except ConstructionError as exc:
        _err(str(exc))
        return VERDICT, "violation", {}, {}
    print(asm.report())
    out = Path(args.out or f"d1_{spec.t}.pat")
    text = write_pattern(asm.coloring, [f"verified periodic packing coloring of D(1,{spec.t})"])
    out.write_text(text)
    print(f"wrote {out}")
    return OK, "valid", {"period": asm.period, "colors": asm.coloring.colors,
                         "deviations": asm.deviations}, {"pattern": artifact_hash(text)}


def cmd_anneal(args):
    from .anneal import AnnealConfig, search
    spec = _spec(args)
    _need(args, "colors", "length")
    seed = args.seed if args.seed is not None else int(time.time())
    kw = {}
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if args.levels is not None:
        kw["levels"] = args.levels
    try:
        cfg = AnnealConfig(spec, args.length, args.colors, seed=seed, **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = search(cfg)
    print(f"seed={seed} period={args.length} colors={args.colors}: best energy {res.energy}"
          f" (restart {res.restart})")
    arts = {}
    if res.coloring is not None:
        print("verified word: " + ",".join(map(str, res.word.tolist())))
        if args.out:
            save_pattern(res.coloring, args.out, [f"annealing, seed {seed}"])
            arts["pattern"] = artifact_hash(Path(args.out).read_bytes())
    if args.trace:
        with open(args.trace, "w") as fh:
            for step, temp, e in res.trace:
                fh.write(f"{step} {temp:.6g} {e}\n")
    counters = {"seed": seed, "energy": res.energy, "restart": res.restart}
    return (OK if res.energy == 0 else BUDGET), ("valid" if res.energy == 0 else "indeterminate"), \
        counters, arts


def cmd_grid_lb(args):
    spec = _spec(args)
    g = grid_lower_bound(spec)
    if g is None:
        print(f"no bound: D(1,{spec.t}) has no 15x9 grid subgraph (needs t >= 9)")
        return OK, "none", {}, {}
    print(g.bound)
    print(f"verified embedding: (x, y) -> y + x*{spec.t}, {g.embedding.width}x{g.embedding.height} grid")
    return VERDICT, str(g.bound), {"bound": g.bound}, {}


def cmd_repro(args):
    from . import repro
    results = repro.run(args.tier)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return (OK if not failed else VERDICT), "pass" if not failed else "fail", {
        r.name: r.passed for r in results}, {}


COMMANDS = {
    "dist": (cmd_dist, "graph distance in D(1,t)"),
    "verify": (cmd_verify, "verify a periodic pattern file"),
    "lb": (cmd_lb, "prove chi_rho > colors by exhaustive search on 1..length"),
    "find": (cmd_find, "find a packing coloring of 1..length"),
    "maxcolor": (cmd_maxcolor, "max vertices of a window colorable from 1..colors"),
    "density": (cmd_density, "exact density sum and verdict"),
    "construct": (cmd_construct, "assemble and verify the large-t coloring"),
    "anneal": (cmd_anneal, "simulated annealing for a periodic coloring"),
    "grid-lb": (cmd_grid_lb, "lower bound 12 from a grid subgraph"),
    "repro": (cmd_repro, "run the reproduction suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=int)
    common.add_argument("--colors", type=int)
    common.add_argument("--length", type=int, help="path length (lb/find) or period (anneal)")
    common.add_argument("--split", type=int)
    common.add_argument("--window", type=int)
    common.add_argument("--max-colored", type=int, help="supply the window bound instead of computing it")
    common.add_argument("--pattern")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int)
    common.add_argument("--budget-nodes", type=int)
    common.add_argument("--budget-time", type=float)
    common.add_argument("--checkpoint")
    common.add_argument("--cached", action="store_true", help="reuse a ledger verdict for an identical command")
    common.add_argument("--ledger", help="ledger file (default ~/.packcolor/ledger.jsonl)")
    common.add_argument("--tier", choices=("desk", "long"), default="desk")
    common.add_argument("--out")
    common.add_argument("--trace")
    common.add_argument("--restarts", type=int)
    common.add_argument("--levels", type=int)

    parser = argparse.ArgumentParser(prog="packcolor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({_backend.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "dist":
            p.add_argument("vertices", type=int, nargs="+", help="offset n, or vertices a b")
    return parser


_UNCACHED = ("cached", "ledger", "threads", "checkpoint", "out", "trace")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    fn = COMMANDS[args.command][0]
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _UNCACHED and k != "command"}
    ledger = Ledger(args.ledger)
    try:
        if args.cached:
            hit = ledger.lookup(args.command, params)
            if hit is not None:
                print(f"cached verdict ({hit['time']}): {hit['verdict']}")
                print(json.dumps(hit["counters"], sort_keys=True))
                return hit["exit_code"]
        code, verdict, counters, arts = fn(args)
    except UsageError as exc:
        _err(str(exc))
        return USAGE
    except LedgerCorruption as exc:
        _err(f"ledger corrupt: {exc}")
        return USAGE
    except KeyboardInterrupt:
        _err("interrupted")
        return BUDGET
    try:
        ledger.append(args.command, params, verdict, _jsonable(counters), arts, code)
    except OSError as exc:
        _err(f"could not write ledger: {exc}")
    return code


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


if __name__ == "__main__":
    sys.exit(main())
