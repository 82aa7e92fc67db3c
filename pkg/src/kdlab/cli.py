"""Command line entry point: ``kdlab {check,rho,extremal,suite,sweep}``.

Every subcommand writes JSON (or CSV when asked) to stdout.  Exit status is 0
on success or a passing report, 1 on a failing report, 2 on bad input and 3 on
an inconclusive report.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from kdlab.errors import KdlabError
from kdlab.extremal import build_Gs, edge_count_Gs, quotient_root_Gs
from kdlab.graph import parse_graph6, write_graph6
from kdlab.harness import SCHEMA_VERSION, SuiteReport, SuiteSpec, check_graph, run_lemma_sweep, run_suite
from kdlab.spectral import DEFAULT_TOL, charpoly_fs, charpoly_tilde, spectral_radius

EXIT_CODES = {"pass": 0, "fail": 1, "inconclusive": 3}


def _emit(data: dict) -> None:
    print(json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=2, sort_keys=True))


def _load_json_arg(text: str) -> dict:
    """Accept inline JSON or a path to a JSON file."""
    p = Path(text)
    if p.is_file():
        text = p.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KdlabError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise KdlabError("expected a JSON object")
    return data


def extremal_row(n: int, s: int) -> dict:
    poly = charpoly_tilde(n) if 2 * s == n else charpoly_fs(n, s)
    return {
        "n": n,
        "s": s,
        "edges": edge_count_Gs(n, s),
        "rho": quotient_root_Gs(n, s),
        "charpoly": list(poly),
    }


def _write_csv(rows: Sequence[dict]) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "s", "e", "rho"])
    for r in rows:
        w.writerow([r["n"], r["s"], r["edges"], repr(r["rho"])])


def _sweep_rows(report: SuiteReport, grid: dict) -> list[dict]:
    lemma = report.suite.get("lemma")
    rows = []
    for delta in grid.get("delta", [1, 2] if lemma == "lemma9" else [1, 2, 3, 4, 5]):
        if lemma == "lemma9":
            ns = range(8 * delta + 4, 8 * delta + 4 + grid.get("n_span", 16) + 1)
        else:
            ns = range(max(3, 2 * delta), grid.get("n_max", 40) + 1)
        for n in ns:
            rows.extend(extremal_row(n, s) for s in range(delta, n // 2 + 1))
    # one row per (n, s) even when delta ranges overlap
    seen, out = set(), []
    for r in rows:
        if (r["n"], r["s"]) not in seen:
            seen.add((r["n"], r["s"]))
            out.append(r)
    return sorted(out, key=lambda r: (r["n"], r["s"]))


# -- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    g = parse_graph6(args.graph6)
    _emit(check_graph(g, args.k, args.d))
    return 0


def cmd_rho(args) -> int:
    g = parse_graph6(args.graph6)
    res = spectral_radius(g, tol=args.tol)
    _emit({"graph6": write_graph6(g), **res.to_dict()})
    return 0


def cmd_extremal(args) -> int:
    svals = [args.s] if args.s is not None else list(range(1, args.n // 2 + 1))
    rows = [extremal_row(args.n, s) for s in svals]
    if args.emit == "csv":
        _write_csv(rows)
        return 0
    for r in rows:
        g = build_Gs(args.n, r["s"])
        assert g.num_edges == r["edges"]
        r["graph6"] = write_graph6(g)
    if args.emit == "graph6":
        for r in rows:
            print(r["graph6"])
        return 0
    _emit({"extremal": rows})
    return 0


def cmd_suite(args) -> int:
    data = _load_json_arg(args.spec)
    if args.corpus:
        data["corpus"] = {"kind": "file", "path": args.corpus}
    report = run_suite(SuiteSpec.from_dict(data), threads=args.threads)
    print(report.to_json())
    return EXIT_CODES.get(report.verdict, 1)


def cmd_sweep(args) -> int:
    grid = _load_json_arg(args.grid) if args.grid else {}
    report = run_lemma_sweep(args.lemma, grid)
    if args.csv:
        _write_csv(_sweep_rows(report, grid))
    else:
        print(report.to_json())
    return EXIT_CODES.get(report.verdict, 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide deficiency, GFC/GBC and k-d-criticality of one graph")
    p.add_argument("graph6")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rho", help="spectral radius by power iteration")
    p.add_argument("graph6")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("extremal", help="construct G_s and its closed-form values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, help="default: every s in 1..n//2")
    p.add_argument("--emit", choices=["json", "graph6", "csv"], default="json")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("suite", help="run a verification suite from a JSON spec")
    p.add_argument("--spec", required=True, help="JSON file or inline JSON")
    p.add_argument("--threads", type=int)
    p.add_argument("--corpus", help="graph6 file overriding the spec's corpus")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("sweep", help="run a lemma parameter sweep")
    p.add_argument("--lemma", required=True, choices=["4", "5", "6", "7", "8", "9"])
    p.add_argument("--grid", help="JSON file or inline JSON")
    p.add_argument("--csv", action="store_true", help="emit the (n, s, e, rho) grid instead")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KdlabError, ValueError) as exc:
        print(f"kdlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
