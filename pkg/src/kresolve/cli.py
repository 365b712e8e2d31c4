"""Command-line entry point: ``kresolve <command> [options]``.

JSON goes to standard output (or ``--out``); human-readable summaries go to
standard error. Exit codes: 0 success, 1 verification failed, 2 usage or
input error, 3 scale guard hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import formats
from .graph import GraphError
from .harness import generate_system, roundtrip
from .kmd_reduction import build_kmd_instance, verify_structure
from .resolving import (
    SolveResult,
    greedy_k_resolving,
    is_k_resolving,
    k_metric_dimension_exact,
    max_k,
    table_for,
)
from .threedm import ScaleGuardExceeded, reduce_3dm_to_3dkm

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_SCALE = 0, 1, 2, 3
DEFAULT_BUDGET = 10_000_000


class UsageError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(obj: dict, out: str | None) -> None:
    text = formats.dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        sys_, hidden = generate_system(args.n, args.m, args.planted, rng)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = formats.system_to_json(sys_)
    if hidden is not None:
        obj["planted"] = formats.matching_to_json(hidden)
    _emit(obj, args.out)
    return EXIT_OK


def cmd_reduce_matching(args) -> int:
    src = formats.system_from_json(_read_json(args.input))
    red = reduce_3dm_to_3dkm(src, args.k)
    _note(f"n'={red.reduced.n} triples={red.reduced.m} segments={red.segments}")
    _emit(formats.reduction_to_json(red), args.out)
    return EXIT_OK


def cmd_reduce_kmd(args) -> int:
    src = formats.system_from_json(_read_json(args.input))
    try:
        rg = build_kmd_instance(src, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g = rg.graph
    _note(f"vertices={g.vertex_count} edges={g.edge_count} m'={rg.m_prime} x={rg.x}")
    _emit(formats.bundle_to_json(rg), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = formats.graph_from_json(_read_json(args.input))
    table = table_for(g, args.truncate)
    if args.mode == "greedy":
        found = greedy_k_resolving(table, args.k)
        if found is None:
            result = SolveResult(args.k, "infeasible", None, 0)
        else:
            result = SolveResult(args.k, "incumbent", tuple(found), 0)
    else:
        result = k_metric_dimension_exact(table, args.k, node_budget=args.budget)
    _note(f"k={args.k} kappa={max_k(table) if g.vertex_count > 1 else '-'} "
          f"status={result.status} size={result.size} nodes={result.nodes_explored}")
    _emit(formats.solve_report(result, g), args.out)
    if result.status == "incumbent" and args.mode == "exact":
        return EXIT_SCALE
    return EXIT_OK


def cmd_verify(args) -> int:
    g = formats.graph_from_json(_read_json(args.input))
    chosen = _read_json(args.set)
    k = args.k if args.k is not None else chosen.get("k")
    if k is None:
        raise UsageError("k missing: pass --k or include it in the set file")
    table = table_for(g, args.truncate)
    cert = is_k_resolving(table, g.ids(chosen["set"]), int(k))
    obj = formats.certificate_to_json(cert, table)
    _note(f"{'VALID' if cert.valid else 'INVALID'} k={cert.k} size={len(cert.vertices)}"
          + ("" if cert.valid else f" failing pair {obj['failing_pair']} has {cert.failing_count}"))
    _emit(obj, args.out)
    return EXIT_OK if cert.valid else EXIT_FAILED


def cmd_roundtrip(args) -> int:
    summary = roundtrip(args.n, args.m, args.k, args.seed, args.trials,
                        planted=args.planted or None, node_budget=args.budget)
    _note(f"trials={summary.trials} 3dm->3dkm agree={summary.matching_agreements} "
          f"3dkm->kmd agree={summary.kmd_agreements} disagreements={len(summary.disagreements)}")
    _emit(summary.to_json(), args.out)
    if summary.disagreements:
        return EXIT_FAILED
    if summary.budget_hits:
        return EXIT_SCALE
    return EXIT_OK


def cmd_analyze(args) -> int:
    obj = _read_json(args.input)
    if "legs" not in obj:
        raise UsageError("analyze expects a reduction bundle (output of reduce-kmd)")
    rg = formats.bundle_from_json(obj)
    report = verify_structure(rg)
    for name, ok in report.checks.items():
        _note(f"{name:3} {'pass' if ok else 'FAIL'}  {report.details.get(name, '')}")
    _emit({"checks": report.checks, "details": report.details, "diameter": report.diameter,
           "formula_diameter": rg.claimed_diameter}, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kresolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    p = add("gen", cmd_gen, "generate a random triple system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--planted", action="store_true", help="hide a perfect matching")
    p.add_argument("--seed", type=int, default=0)

    p = add("reduce-matching", cmd_reduce_matching, "3DM -> 3DkM reduction")
    p.add_argument("input", help="triple system JSON ('-' for stdin)")
    p.add_argument("--k", type=int, required=True)

    p = add("reduce-kmd", cmd_reduce_kmd, "3D(k-1)M -> k-metric dimension reduction")
    p.add_argument("input", help="triple system JSON ('-' for stdin)")
    p.add_argument("--k", type=int, required=True)

    p = add("solve", cmd_solve, "minimum k-resolving set")
    p.add_argument("input", help="graph or reduction bundle JSON")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exact-search node limit")
    p.add_argument("--truncate", type=int, default=None, help="cap distances at this value")

    p = add("verify", cmd_verify, "check a k-resolving set")
    p.add_argument("input", help="graph or reduction bundle JSON")
    p.add_argument("set", help='resolving-set JSON {"k": .., "set": [..]}')
    p.add_argument("--k", type=int, default=None, help="override k from the set file")
    p.add_argument("--truncate", type=int, default=None)

    p = add("roundtrip", cmd_roundtrip, "check both reductions on random systems")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--planted", action="store_true", help="plant a matching in every trial")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("analyze", cmd_analyze, "structural report of a reduction bundle")
    p.add_argument("input", help="reduction bundle JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScaleGuardExceeded as exc:
        _note(f"error: {exc}")
        return EXIT_SCALE
    except (UsageError, GraphError, ValueError, KeyError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
