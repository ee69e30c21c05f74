"""Exact m0(1; n_1, ..., n_r) for small unequal part sizes, archived as JSON.

No closed form is asserted for r >= 5; each row records the optimum next to
the two natural candidates (the E-type value and s * prod of the larger parts).
"""

import argparse
import itertools
import json
import math

from partite_ekr.constructions import product_matching_bound, m0_asym_branch_E
from partite_ekr.model import PartSpec
from partite_ekr.search import SearchProblem, solve


def points(r: int, max_n: int, max_vectors: int):
    for sizes in itertools.combinations_with_replacement(range(max_n, 1, -1), r):
        if len(set(sizes)) > 1 and math.prod(sizes) <= max_vectors:
            yield sizes


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--r", type=int, default=5)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-vectors", type=int, default=250)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--out", default="asym_matching.json")
    args = p.parse_args()
    rows = []
    for sizes in points(args.r, args.max_n, args.max_vectors):
        res = solve(SearchProblem.matching(PartSpec(sizes), 1), budget=args.budget)
        row = {
            "sizes": list(sizes),
            "optimum": res.optimum,
            "exhaustive": res.exhaustive,
            "E_type": m0_asym_branch_E(1, sizes),
            "upper": product_matching_bound(1, sizes),
            "nodes": res.nodes_explored,
        }
        rows.append(row)
        print(json.dumps(row))
    with open(args.out, "w") as fh:
        json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
