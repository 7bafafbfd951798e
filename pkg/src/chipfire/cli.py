"""Command-line front end.

Exit codes: 0 success, 1 verification failure or no fit, 2 usage or parse
error, 3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .chip import check_configuration, format_configuration, parse_configuration
from .enumeration import MODES, count_debt_reachable, count_reachable, sweep
from .graph import GraphError, graph_from_spec, reduced_laplacian, spanning_tree_count
from .linalg import smith_normal_form
from .quasipoly import (InsufficientSamplesError, detect_quasipolynomial,
                        expected_leading_coefficient, fit_quasipolynomial, format_branches,
                        leading_coefficient_check)
from .reach import (ResourceLimitError, block_partition, debt_reachability_vector, is_reachable,
                    is_reachable_bfs, most_fired)
from .verify import CHECKS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
CSV_FIELDS = ("c", "debt_count", "reachable_count", "block_count", "seconds")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunSpec:
    """Everything that determines a sweep's output."""

    graph: str
    source_vertex: int
    c_min: int
    c_max: int
    modes: tuple[str, ...]
    fmt: str = "csv"

    def canonical(self) -> str:
        return (f"graph={self.graph} source-vertex={self.source_vertex} "
                f"c={self.c_min}..{self.c_max} modes={','.join(sorted(self.modes))} "
                f"format={self.fmt}")

    @classmethod
    def parse(cls, text: str) -> RunSpec:
        fields = dict(part.split("=", 1) for part in text.split())
        lo, hi = fields["c"].split("..")
        return cls(fields["graph"], int(fields["source-vertex"]), int(lo), int(hi),
                   tuple(sorted(fields["modes"].split(","))), fields["format"])


def parse_modes(text: str) -> tuple[str, ...]:
    modes = tuple(sorted({m.strip() for m in text.split(",") if m.strip()}))
    bad = [m for m in modes if m not in MODES]
    if not modes or bad:
        raise UsageError(f"modes must be drawn from {','.join(MODES)}, got {text!r}")
    return modes


def _cell(v) -> str:
    return "" if v is None else str(v)


def render_records(records, fmt: str, timing: bool) -> str:
    rows = []
    for r in records:
        rows.append({"c": r.c, "debt_count": r.debt_count, "reachable_count": r.reachable_count,
                     "block_count": r.block_count,
                     "seconds": round(r.seconds, 6) if timing else None})
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "human":
        out = []
        for row in rows:
            parts = [f"{k}={row[k]}" for k in CSV_FIELDS if row[k] is not None]
            out.append("  ".join(parts))
        return "\n".join(out) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_cell(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _graph(args):
    return graph_from_spec(args.graph)


def cmd_count(args) -> int:
    g = _graph(args)
    src = check_configuration(g, parse_configuration(args.source))
    if args.mode == "debt":
        n = count_debt_reachable(g, src)
    else:
        n = count_reachable(g, src)
    print(n)
    return EXIT_OK


def cmd_sweep(args) -> int:
    g = _graph(args)
    modes = parse_modes(args.modes)
    if args.cmin > args.cmax or args.cmin < 0:
        raise UsageError(f"empty c range {args.cmin}..{args.cmax}")
    spec = RunSpec(args.graph, args.source_vertex, args.cmin, args.cmax, modes, args.format)
    records = sweep(g, spec.source_vertex, spec.c_min, spec.c_max, spec.modes, jobs=args.jobs)
    _emit(render_records(records, spec.fmt, args.timing), args.out)
    return EXIT_OK


def load_values(path: str, column: str) -> dict[int, int]:
    """Read c -> value from a sweep CSV, a two-column CSV, or a JSON object."""
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        return {int(k): int(v) for k, v in json.loads(text).items()}
    reader = csv.DictReader(io.StringIO(text))
    fields = reader.fieldnames or []
    if column not in fields:
        if len(fields) != 2:
            raise UsageError(f"column {column!r} not found in {path}")
        column = fields[1]
    values = {}
    for row in reader:
        if row[column] != "":
            values[int(row[fields[0]])] = int(row[column])
    return values


def cmd_fit(args) -> int:
    g = None
    if args.values:
        values = load_values(args.values, args.column)
    else:
        if not args.graph:
            raise UsageError("fit needs --values FILE or --graph with a c range")
        g = _graph(args)
        mode = "reachable" if args.column.startswith("reachable") else "debt"
        records = sweep(g, args.source_vertex, args.cmin, args.cmax, (mode,), jobs=args.jobs)
        values = {r.c: r.debt_count if mode == "debt" else r.reachable_count for r in records}
    if not values:
        raise UsageError("no sample values")

    if args.period is not None and args.degree is not None:
        onset = args.onset if args.onset is not None else min(values)
        try:
            q = fit_quasipolynomial(values, args.period, args.degree, onset)
        except InsufficientSamplesError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
    else:
        max_degree = args.max_degree if args.max_degree is not None else (g.n - 1 if g else 6)
        det = detect_quasipolynomial(values, args.max_period, max_degree, args.onset)
        q = det.quasipolynomial if det else None
    if q is None:
        print("no quasipolynomial fits the samples", file=sys.stderr)
        return EXIT_FAIL
    report = q.to_json()
    if g is not None:
        kappa = spanning_tree_count(g)
        report["graph"] = args.graph
        report["onset_bound_2E_minus_n"] = 2 * g.edge_count - g.n
        report["expected_leading_coefficient"] = str(expected_leading_coefficient(g.n, kappa))
        report["leading_coefficient_matches"] = leading_coefficient_check(q, g)
    if args.format == "json":
        print(json.dumps(report))
    else:
        print(f"period {q.period}, degree {q.degree}, onset {q.onset}")
        for line in format_branches(q):
            print(f"  {line}")
        for key in ("onset_bound_2E_minus_n", "expected_leading_coefficient",
                    "leading_coefficient_matches"):
            if key in report:
                print(f"{key}: {report[key]}")
    return EXIT_OK


def cmd_blocks(args) -> int:
    g = _graph(args)
    part = block_partition(g, args.c, keep_configurations=args.list)
    kappa = spanning_tree_count(g)
    sizes = sorted(part.sizes.values(), reverse=True)
    print(f"c={args.c} blocks={part.block_count} kappa={kappa} sizes={sizes}")
    if sizes:
        print(f"size ratio max/min = {Fraction(sizes[0], sizes[-1])}")
    if args.list and part.blocks:
        for label in sorted(part.blocks):
            confs = " ".join(format_configuration(c) for c in part.blocks[label])
            print(f"{list(label)}: {confs}")
    return EXIT_OK


def cmd_spanning_trees(args) -> int:
    g = _graph(args)
    snf = smith_normal_form(reduced_laplacian(g))
    print(spanning_tree_count(g))
    print(f"sandpile group invariant factors: {list(snf.invariant_factors)}")
    return EXIT_OK


def cmd_reachability(args) -> int:
    g = _graph(args)
    a = check_configuration(g, parse_configuration(args.from_))
    b = check_configuration(g, parse_configuration(args.to))
    x = debt_reachability_vector(g, a, b)
    print(f"debt-reachable: {'yes' if x is not None else 'no'}")
    if x is not None:
        print(f"reduced firing vector: {format_configuration(x)}")
        mf = most_fired(g, a, x)
        print(f"most-fired configuration: {format_configuration(mf.configuration)} "
              f"remaining {format_configuration(mf.remaining)}")
    reach = is_reachable(g, a, b)
    print(f"reachable: {'yes' if reach else 'no'}")
    if args.bfs:
        oracle = is_reachable_bfs(g, a, b)
        print(f"bfs oracle: {'yes' if oracle else 'no'}")
        if oracle != reach:
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    check = CHECKS[args.check]
    kwargs = {}
    params = inspect.signature(check).parameters
    if args.n is not None and "ns" in params:
        kwargs["ns"] = [args.n]
    if args.cmax is not None and "cmax" in params:
        kwargs["cmax"] = args.cmax
    if args.trials is not None and "trials" in params:
        kwargs["trials"] = args.trials
    if args.seed is not None and "seed" in params:
        kwargs["seed"] = args.seed
    results = check(**kwargs)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chipfire",
                                     description="Reachability and counting for chip-firing games.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p, required=True):
        p.add_argument("--graph", required=required,
                       help="cycle:N, path:N, complete:N or file:PATH (JSON)")

    p = sub.add_parser("count", help="count configurations reachable from a source")
    graph_arg(p)
    p.add_argument("--source", required=True, help="comma-separated chips, e.g. 4,0,0,0")
    p.add_argument("--mode", choices=("debt", "reachable"), default="debt")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="tabulate counts over a range of c")
    graph_arg(p)
    p.add_argument("--source-vertex", type=int, default=0)
    p.add_argument("--cmin", type=int, default=0)
    p.add_argument("--cmax", type=int, required=True)
    p.add_argument("--modes", default="debt", help="comma list of debt,reachable,blocks")
    p.add_argument("--format", choices=("csv", "jsonl", "human"), default="csv")
    p.add_argument("--timing", action="store_true", help="fill the seconds column")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="fit or detect a quasipolynomial")
    p.add_argument("--values", help="CSV from sweep, two-column CSV, or JSON {c: value}")
    p.add_argument("--column", default="debt_count")
    graph_arg(p, required=False)
    p.add_argument("--source-vertex", type=int, default=0)
    p.add_argument("--cmin", type=int, default=0)
    p.add_argument("--cmax", type=int, default=30)
    p.add_argument("--period", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--onset", type=int)
    p.add_argument("--max-period", type=int, default=12)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("blocks", help="partition configurations with c chips into blocks")
    graph_arg(p)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("verify", help="run a named check bundle")
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--n", type=int)
    p.add_argument("--cmax", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spanning-trees", help="spanning tree count and sandpile group")
    graph_arg(p)
    p.set_defaults(func=cmd_spanning_trees)

    p = sub.add_parser("reachability", help="decide reachability between two configurations")
    graph_arg(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--bfs", action="store_true", help="cross-check with breadth-first search")
    p.set_defaults(func=cmd_reachability)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
