"""Command-line surface: JSON/CSV emission and the batch conjecture sweep.

All output is deterministic for a fixed configuration: enumeration orders
are fixed, the modular prime stream is seeded, and JSON keys are emitted
in canonical order.  The one exception is the per-cell timing recorded in
sweep checkpoint files.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .characters import DecompositionTable
from .crit import crit_set, decode_gamma_delta, conjecture_report
from .errors import InternalCheckError
from .koszul import euler_check, homology_decomposition
from .linalg import EXACT_COLUMN_LIMIT
from .partitions import format_partition, parse_partition
from .theta import ThetaContext, oracle_numeric, theta_exact
from .transfer import h0_computed, h0_predicted


def _resolve_mode(args) -> str:
    """Exact mode silently escalates to modular above the size threshold
    unless --force-exact is given."""
    if args.rank_mode == "exact" and not args.force_exact:
        return "auto"
    return args.rank_mode


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=2)
    print(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")


def _write_csv(path: str, table: DecompositionTable) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lambda", "mu", "mult"])
        writer.writerows(table.to_csv_rows())


def _signed_side(side: dict) -> list[dict]:
    ordered = sorted(side.items(), key=lambda kv: (tuple(-x for x in kv[0][0]), tuple(-x for x in kv[0][1])))
    return [
        {"lambda": format_partition(l), "mu": format_partition(m), "coeff": c}
        for (l, m), c in ordered
    ]


def cmd_h0(args) -> int:
    mode = _resolve_mode(args)
    table = h0_predicted(args.a, args.b) if args.predicted else h0_computed(args.a, args.b, mode=mode)
    _emit(args, table.to_json_obj())
    if args.csv:
        _write_csv(args.csv, table)
    return 0


def cmd_check_h0(args) -> int:
    mode = _resolve_mode(args)
    failures = 0
    for b in range(1, args.max_b + 1):
        for a in range(1, b + 1):
            ok = h0_computed(a, b, mode=mode) == h0_predicted(a, b)
            print(f"{'PASS' if ok else 'FAIL'} a={a} b={b}")
            failures += 0 if ok else 1
    print(f"{args.max_b * (args.max_b + 1) // 2 - failures} cells passed, {failures} failed")
    return 1 if failures else 0


def cmd_theta(args) -> int:
    ctx = ThetaContext(
        parse_partition(args.lam), parse_partition(args.nu), parse_partition(args.kappa)
    )
    value = theta_exact(ctx)
    payload = {"theta": f"{value.numerator}/{value.denominator}"}
    if args.oracle:
        approx = oracle_numeric(ctx)
        payload["oracle"] = approx
        payload["abs_err"] = abs(float(value) - approx)
    _emit(args, payload)
    return 0


def cmd_homology(args) -> int:
    mode = _resolve_mode(args)
    tables = homology_decomposition(args.a, args.b, mode=mode)
    if args.n is not None:
        tables = {args.n: tables.get(args.n, DecompositionTable({}))}
    payload = {str(n): table.to_json_obj() for n, table in sorted(tables.items())}
    _emit(args, payload)
    return 0


def cmd_euler(args) -> int:
    mode = _resolve_mode(args)
    report = euler_check(args.a, args.b, mode=mode)
    payload = {
        "a": report.a,
        "b": report.b,
        "ok": report.ok,
        "critical_side": _signed_side(report.critical_side),
        "homology_side": _signed_side(report.homology_side),
        "chain_side": _signed_side(report.chain_side),
    }
    _emit(args, payload)
    return 0 if report.ok else 1


def cmd_crit(args) -> int:
    rows = []
    for pair in crit_set(args.a, args.b):
        row = {
            "lambda": format_partition(pair.lam),
            "mu": format_partition(pair.mu),
            "degree": pair.degree,
        }
        if args.gamma_delta:
            gamma, delta = decode_gamma_delta(pair)
            row["gamma"] = format_partition(gamma)
            row["delta"] = format_partition(delta)
        rows.append(row)
    _emit(args, rows)
    return 0


def _conjecture_cell(a: int, b: int, mode: str) -> dict:
    start = time.monotonic()
    computed = homology_decomposition(a, b, mode=mode)
    report = conjecture_report(a, b, computed=computed)
    euler = euler_check(a, b, mode=mode)
    return {
        "a": a,
        "b": b,
        "overall": report.overall,
        "euler_ok": euler.ok,
        "degrees": {
            str(n): {
                "status": report.status[n],
                "predicted": report.predicted.get(n, DecompositionTable({})).to_json_obj(),
                "computed": report.computed.get(n, DecompositionTable({})).to_json_obj(),
            }
            for n in sorted(report.status)
        },
        "seconds": round(time.monotonic() - start, 3),
    }


def cmd_conjecture(args) -> int:
    mode = _resolve_mode(args)
    out_path = Path(args.out)
    cell_dir = Path(str(out_path) + ".cells")
    cell_dir.mkdir(parents=True, exist_ok=True)
    cells = [(a, b) for a in range(1, args.max_a + 1) for b in range(1, args.max_b + 1)]

    def run_cell(cell):
        a, b = cell
        cell_path = cell_dir / f"cell_a{a}_b{b}.json"
        if cell_path.exists():
            try:
                return json.loads(cell_path.read_text())
            except json.JSONDecodeError:
                pass  # recompute a torn checkpoint
        record = _conjecture_cell(a, b, mode)
        cell_path.write_text(json.dumps(record, indent=2) + "\n")
        return record

    workers = max(1, int(os.environ.get("FIHL_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_cell, cells))
    else:
        records = [run_cell(cell) for cell in cells]

    violations = 0
    for record in records:
        print(f"cell a={record['a']} b={record['b']}: {record['overall']}")
        violations += 1 if record["overall"] == "VIOLATION" else 0
    summary = {
        "max_a": args.max_a,
        "max_b": args.max_b,
        "rank_mode": args.rank_mode,
        "violations": violations,
        "cells": records,
    }
    out_path.write_text(json.dumps(summary, indent=2) + "\n")
    print(f"report written to {out_path}")
    return 1 if violations else 0


def _add_rank_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rank-mode", choices=["exact", "modular"], default="modular")
    parser.add_argument(
        "--force-exact",
        action="store_true",
        help=f"keep exact mode even beyond {EXACT_COLUMN_LIMIT} columns",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fihl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h0", help="cokernel of the transfer map at (a, b)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--predicted", action="store_true", help="emit the closed form instead")
    p.add_argument("--out")
    p.add_argument("--csv")
    _add_rank_mode(p)
    p.set_defaults(func=cmd_h0)

    p = sub.add_parser("check-h0", help="compare computed and closed-form cokernels")
    p.add_argument("--max-b", type=int, required=True)
    _add_rank_mode(p)
    p.set_defaults(func=cmd_check_h0)

    p = sub.add_parser("theta", help="exact overlap coefficient for a chain")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--kappa", required=True)
    p.add_argument("--oracle", action="store_true", help="also run the float oracle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("homology", help="per-degree homology decomposition")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, help="restrict to one degree")
    p.add_argument("--out")
    _add_rank_mode(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("euler", help="signed critical sum vs Euler characteristic")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--out")
    _add_rank_mode(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("crit", help="critical pairs at (a, b)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--gamma-delta", action="store_true", help="attach the seed-pair codec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_crit)

    p = sub.add_parser("conjecture", help="resumable sweep comparing prediction and homology")
    p.add_argument("--max-a", type=int, required=True)
    p.add_argument("--max-b", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_rank_mode(p)
    p.set_defaults(func=cmd_conjecture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("a", "b", "max_a", "max_b"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
