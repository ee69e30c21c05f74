"""Tabulate maximum non-trivial t-intersecting families of (t+1)-subsets of [r].

Prints the optimum, the number of maximum families and how many of them are
stars or simplices, next to max(r-t, t+2).
"""

import argparse

from partite_ekr.constructions import uniform_max
from partite_ekr.search import solve_uniform


def main() -> None:
    p = argparse.ArgumentParser(description="maximum uniform t-intersecting families")
    p.add_argument("--max-r", type=int, default=7)
    args = p.parse_args()
    print(f"{'r':>2} {'t':>2} {'max':>4} {'expect':>6} {'count':>5}  classes")
    for r in range(3, args.max_r + 1):
        for t in range(1, r - 1):
            res = solve_uniform(r, t)
            classes = ", ".join(f"{k}={v}" for k, v in sorted(res.isomorphism_classes.items()))
            print(f"{r:>2} {t:>2} {res.optimum:>4} {uniform_max(r, t):>6} {res.witness_count:>5}  {classes}")


if __name__ == "__main__":
    main()
