"""Run the verify-theorems suites and store one JSON report per suite.

    python3 scripts/run_grid.py --out results/ --max-n 4 --max-r 4
"""

import argparse
import contextlib
import io
import pathlib
import sys

from partite_ekr.cli import main

SUITES = ("all-n", "uniform", "formulas", "large-n")


def run_suite(suite: str, args) -> tuple[int, str]:
    argv = ["--json", "--max-vectors", str(args.max_vectors), "verify-theorems", "--suite", suite,
            "--max-n", str(args.max_n), "--max-r", str(args.max_r), "--threads", str(args.threads)]
    if args.budget is not None:
        argv += ["--budget", str(args.budget)]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def main_script() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results")
    p.add_argument("--suites", default=",".join(SUITES))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-r", type=int, default=4)
    p.add_argument("--max-vectors", type=int, default=100)
    p.add_argument("--budget", type=int)
    p.add_argument("--threads", type=int, default=1)
    args = p.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for suite in args.suites.split(","):
        code, text = run_suite(suite, args)
        path = out / f"{suite}.json"
        path.write_text(text)
        print(f"{suite:10s} exit={code} -> {path}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main_script())
