"""Command-line front end.

Every command builds a report with a deterministic body (command, parameters,
seed, results) and a separate header carrying the timestamp, versions and wall
time.  Exit codes: 0 success (including inconclusive rows, with a warning),
1 usage error, 2 a closed form contradicted inside its stated range.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import platform
import random
import sys
import time
from dataclasses import dataclass, field
from importlib import metadata

import numpy as np

from .analysis import (
    analyze,
    is_nontrivial_intersecting_family,
    is_nontrivial_matching_family,
)
from .constructions import (
    CONSTRUCTIONS,
    build,
    iota0_branch_K,
    iota0_branch_W,
    lemma_I1_lhs,
    lemma_I1_rhs,
    relabel,
    size_formula,
)
from .model import FamilyError, PartSpec, dumps_family, read_family, write_family
from .search import (
    INCONCLUSIVE,
    NODE_LIMIT_ENV,
    SearchProblem,
    solve,
    solve_uniform,
    verify_theorem,
)
from .shifting import apply_shift, shift_closure_preserving_nontriviality, verify_structure_lemmas
from .sunflower import base_of_partite_family

SCHEMA = "partite-ekr.report/1"
EXIT_OK, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int
    results: object = None
    warnings: list[str] = field(default_factory=list)
    contradiction: bool = False
    started: str = ""
    wall_time: float = 0.0

    def header(self) -> dict:
        return {
            "timestamp": self.started,
            "wall_time_s": round(self.wall_time, 3),
            "versions": versions(),
        }

    def body(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "results": self.results,
            "warnings": self.warnings,
            "contradiction": self.contradiction,
        }

    def to_json(self) -> str:
        return json.dumps({"header": self.header(), "body": self.body()}, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in self.header().items()]
        lines.append(f"command: {self.command}")
        lines.append(f"parameters: {json.dumps(self.parameters, sort_keys=True)}")
        lines.append(f"seed: {self.seed}")
        lines.extend(_render(self.results))
        lines.extend(f"warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def versions() -> dict:
    try:
        pkg = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        pkg = "unknown"
    return {"package": pkg, "python": platform.python_version(), "numpy": np.__version__}


def _render(results) -> list[str]:
    if isinstance(results, list) and results and isinstance(results[0], dict):
        return _table(results)
    if isinstance(results, dict):
        out = []
        for k, v in results.items():
            if k == "family_text":
                out.append("family:")
                out.extend("  " + ln for ln in v.splitlines())
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                out.append(f"{k}:")
                out.extend("  " + ln for ln in _table(v))
            else:
                out.append(f"{k}: {json.dumps(v, sort_keys=True)}")
        return out
    return [] if results is None else [str(results)]


def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    return [fmt.format(*cols).rstrip()] + [fmt.format(*row).rstrip() for row in cells]


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


# ---------------------------------------------------------------- argument helpers

def _sizes(args) -> tuple[int, ...]:
    if getattr(args, "sizes", None):
        try:
            sizes = tuple(int(x) for x in args.sizes.split(","))
        except ValueError:
            raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
        return sizes
    if args.r is None or args.n is None:
        raise UsageError("give either --sizes or both --r and --n")
    return (args.n,) * args.r


def _spec(args) -> PartSpec:
    return PartSpec(_sizes(args), max_vectors=args.max_vectors)


def _load(args):
    return read_family(args.path, max_vectors=args.max_vectors)


# ---------------------------------------------------------------- commands

def cmd_construct(args, report: RunReport) -> None:
    spec = _spec(args)
    family = build(args.name, spec, s=args.s, t=args.t)
    expected = size_formula(args.name, spec, s=args.s, t=args.t)
    if args.relabel:
        family = relabel(family, random.Random(args.seed))
    res = {
        "construction": args.name,
        "sizes": list(spec.sizes),
        "size": len(family),
        "formula": None if expected is None else expected.name,
        "formula_value": None if expected is None else expected.value,
    }
    if expected is not None and expected.value != len(family):
        report.contradiction = True
    if args.out:
        write_family(family, args.out)
        res["written"] = str(args.out)
    else:
        res["family_text"] = dumps_family(family)
    report.results = res


def cmd_analyze(args, report: RunReport) -> None:
    family = _load(args)
    rep = analyze(family)
    res = {"size": len(family), "sizes": list(family.spec.sizes)}
    res.update(rep.as_dict())
    if res["fixed_coords"] is None:
        res["fixed_coords"] = "undefined"
    if args.s is not None:
        res[f"nontrivial_matching(s={args.s})"] = is_nontrivial_matching_family(family, args.s)
    if args.t is not None:
        res[f"nontrivial_intersecting(t={args.t})"] = is_nontrivial_intersecting_family(family, args.t)
    report.results = res


def cmd_shift(args, report: RunReport) -> None:
    family = _load(args)
    if args.closure:
        if args.t is None:
            raise UsageError("--closure needs --t")
        out, resistance = shift_closure_preserving_nontriviality(family, args.t)
        res = {
            "size": len(out),
            "resistant_parts": {str(k): v for k, v in sorted(resistance.resistant_parts.items())},
            "shifted_parts": sorted(resistance.shifted_parts),
        }
        if args.check:
            structure = verify_structure_lemmas(out, args.t)
            res["structure_checks"] = [
                {"check": c.name, "passed": c.passed, "detail": c.detail} for c in structure.checks
            ]
            if not structure.passed:
                report.contradiction = True
    else:
        if args.part is None or args.symbol is None:
            raise UsageError("give --part and --symbol, or --closure with --t")
        outcome = apply_shift(family, args.part, args.symbol)
        out = outcome.family
        res = {"size": len(out), "moved": outcome.moved_count, "blocked": outcome.blocked_count}
    if args.out:
        write_family(out, args.out)
        res["written"] = str(args.out)
    else:
        res["family_text"] = dumps_family(out)
    report.results = res


def cmd_base(args, report: RunReport) -> None:
    family = _load(args)
    base = base_of_partite_family(family, args.s)
    res = {
        "size": len(family),
        "base_size": len(base.family),
        "rho": {str(k): v for k, v in base.rho().items()},
        "base": [[list(v) for v in m] for m in base.family.as_lists()],
        "checks": base.checks,
        "shrink_attempts": len(base.provenance),
    }
    if not all(base.checks.values()):
        report.contradiction = True
    if args.log:
        with open(args.log, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(base.provenance_jsonl())
        res["log_written"] = str(args.log)
    report.results = res


def cmd_search(args, report: RunReport) -> None:
    if args.uniform:
        if args.r is None or args.t is None:
            raise UsageError("--uniform needs --r and --t")
        result = solve_uniform(args.r, args.t)
        report.results = result.as_dict()
        if not result.matched_formula[2] or not result.all_witnesses_named:
            report.contradiction = True
        return
    spec = _spec(args)
    if args.mode == "matching":
        if args.s is None:
            raise UsageError("matching mode needs --s")
        problem = SearchProblem.matching(spec, args.s)
    else:
        if args.t is None:
            raise UsageError("intersecting mode needs --t")
        problem = SearchProblem.intersecting(spec, args.t)
    result = solve(problem, budget=args.budget, symmetry=not args.no_symmetry, threads=args.threads)
    res = result.as_dict()
    if args.threads > 1:
        res.pop("nodes_explored")  # depends on scheduling
    if not result.exhaustive:
        report.warnings.append("node budget exhausted; optimum is the best family found")
    if result.witness is not None:
        if args.out:
            write_family(result.witness, args.out)
            res["written"] = str(args.out)
        else:
            res["family_text"] = dumps_family(result.witness)
    res.pop("witness")
    report.results = res


# ---------------------------------------------------------------- verify-theorems

def _desc_tuples(r: int, max_n: int):
    def rec(prefix, hi, k):
        if k == 0:
            yield tuple(prefix)
            return
        for n in range(hi, 1, -1):
            yield from rec(prefix + [n], n, k - 1)
    yield from rec([], max_n, r)


def all_n_points(max_vectors: int, max_n: int, max_r: int):
    for r in range(3, max_r + 1):
        for sizes in sorted(_desc_tuples(r, max_n)):
            if int(np.prod(sizes)) > max_vectors:
                continue
            if len(set(sizes)) == 1:
                yield "m0_s1", sizes, None
            if r == 3:
                yield "m0_asym3", sizes, None
            yield "iota0_r_minus_2", sizes, None


def large_n_points(max_vectors: int, max_n: int, max_r: int):
    for r in range(3, max_r + 1):
        for n in range(2, max_n + 1):
            if n ** r > max_vectors:
                continue
            for s in range(2, n):
                yield "m0_s", (n,) * r, s
            for t in range(1, r - 1):
                yield "iota0_t", (n,) * r, t
        if r != 4:
            continue
        for sizes in sorted(_desc_tuples(r, max_n)):
            if len(set(sizes)) > 1 and int(np.prod(sizes)) <= max_vectors:
                for s in range(1, sizes[-1]):
                    yield "m0_asym", sizes, s


def formula_rows(max_n: int = 100, max_r: int = 12) -> list[dict]:
    rows = []
    for r in range(3, max_r + 1):
        bad = [n for n in range(2, max_n + 1) if lemma_I1_lhs(n, r) < lemma_I1_rhs(n, r)]
        rows.append({
            "check": "I1: n^(r-1)-(n-1)^(r-1)+n-1 >= 3n^(r-2)-2n^(r-3)",
            "params": {"r": r, "n": f"2..{max_n}"},
            "result": "PASS" if not bad else "FAIL",
            "note": "" if not bad else f"fails at n={bad[:5]}",
        })
    for r in (4, 6):
        t = r // 2 - 1
        bad = [n for n in range(2, max_n + 1) if iota0_branch_W(t, n, r) != iota0_branch_K(t, n, r)]
        note = ""
        if bad:
            n = bad[0]
            note = f"n={n}: W branch {iota0_branch_W(t, n, r)} vs K branch {iota0_branch_K(t, n, r)}"
        rows.append({
            "check": "iota0 branches tie at t = r/2 - 1",
            "params": {"r": r, "t": t, "n": f"2..{max_n}"},
            "result": "PASS" if not bad else "FAIL",
            "note": note,
        })
    return rows


def uniform_rows(max_r: int) -> list[dict]:
    rows = []
    for r in range(3, max_r + 1):
        for t in range(1, r - 1):
            res = solve_uniform(r, t)
            ok = res.matched_formula[2] and res.all_witnesses_named
            rows.append({
                "theorem": "uniform_max",
                "params": {"r": r, "t": t},
                "formula": res.matched_formula[1],
                "optimum": res.optimum,
                "verdict": "EQUAL" if res.matched_formula[2] else "MISMATCH",
                "classes": dict(sorted(res.isomorphism_classes.items())),
                "contradiction": not ok,
            })
    return rows


def cmd_verify(args, report: RunReport) -> None:
    suites = ["all-n", "large-n", "formulas", "uniform"] if args.suite == "all" else [args.suite]
    rows: list[dict] = []
    for suite in suites:
        if suite == "formulas":
            for row in formula_rows():
                rows.append({"suite": suite, **row})
            continue
        if suite == "uniform":
            for row in uniform_rows(min(args.max_r, 8)):
                rows.append({"suite": suite, **row})
            continue
        if suite == "all-n":
            points = all_n_points(args.max_vectors, args.max_n, args.max_r)
            budget = args.budget
        else:
            points = large_n_points(args.max_vectors, args.max_n, args.max_r)
            budget = args.budget
            if budget is None and NODE_LIMIT_ENV not in os.environ:
                budget = args.large_n_budget
        for theorem_id, sizes, param in points:
            rep = verify_theorem(theorem_id, sizes, param, budget=budget, threads=args.threads)
            row = {"suite": suite, **rep.row()}
            if args.threads > 1:
                row.pop("nodes")
            rows.append(row)
    for row in rows:
        if row.get("contradiction") or row.get("result") == "FAIL":
            report.contradiction = True
        if row.get("verdict") == INCONCLUSIVE:
            report.warnings.append(f"inconclusive: {row['theorem']} {json.dumps(row['params'], sort_keys=True)}")
    report.results = rows


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partite-ekr",
        description="Constructions, invariants and exact search for non-trivial r-partite families.",
        epilog=f"The node budget of every search can be overridden with {NODE_LIMIT_ENV}.",
    )
    def common(p, suppress):
        # accepted before or after the subcommand; the sub-level copy must not clobber
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        p.add_argument("--json", action="store_true", help="emit the report as JSON",
                       **kw)
        p.add_argument("--seed", type=int, help="seed for randomized steps (default 0)",
                       **(kw or {"default": 0}))
        p.add_argument("--max-vectors", type=int,
                       help="cap on the product of part sizes (default: 10^6; verify-theorems: 100)",
                       **(kw or {"default": None}))

    common(parser, False)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, True)
    sub = parser.add_subparsers(dest="command", required=True)

    def space(p, need_sizes=True):
        p.add_argument("--r", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--sizes", help="comma-separated part sizes, e.g. 3,2,2")

    p = sub.add_parser("construct", parents=[shared], help="materialize W_r, E, W_rt or K_rt")
    p.add_argument("--name", required=True, choices=CONSTRUCTIONS)
    space(p)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--relabel", action="store_true", help="apply a random automorphism (uses --seed)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", parents=[shared], help="nu, tau, intersections and non-triviality of a family file")
    p.add_argument("path")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("shift", parents=[shared], help="apply one shift, or the non-triviality preserving closure")
    p.add_argument("path")
    p.add_argument("--part", type=int)
    p.add_argument("--symbol", type=int)
    p.add_argument("--closure", action="store_true")
    p.add_argument("--t", type=int)
    p.add_argument("--check", action="store_true", help="check the fixpoint structure after --closure")
    p.add_argument("--out")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("base", parents=[shared], help="base of a family with nu <= s < tau")
    p.add_argument("path")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--log", help="write the shrink provenance as JSON lines")
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("search", parents=[shared], help="exact maximum non-trivial family")
    p.add_argument("--mode", choices=("matching", "intersecting"), default="matching")
    space(p)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--uniform", action="store_true", help="t-intersecting (t+1)-sets of [r] instead")
    p.add_argument("--budget", type=int, help=f"node limit (default: ${NODE_LIMIT_ENV} or 10^8)")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write the witness family here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-theorems", parents=[shared], help="compare exact optima with the closed forms")
    p.add_argument("--suite", choices=("all-n", "large-n", "formulas", "uniform", "all"), default="all-n")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-r", type=int, default=4)
    p.add_argument("--budget", type=int, help="node limit per point")
    p.add_argument("--large-n-budget", type=int, default=10**6,
                   help=f"node limit per large-n point when neither --budget nor ${NODE_LIMIT_ENV} is given (default 10^6)")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.max_vectors is None:
        args.max_vectors = 100 if args.command == "verify-theorems" else 10**6
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json", "seed", "command")}
    report = RunReport(args.command, params, args.seed)
    report.started = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    start = time.perf_counter()
    try:
        args.func(args, report)
    except (UsageError, FamilyError, OSError) as exc:
        print(f"partite-ekr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.wall_time = time.perf_counter() - start
    print(report.to_json() if args.json else report.to_text())
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_CONTRADICTION if report.contradiction else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
