"""Acceptance criteria 1-11.

Each test records a single PASS/FAIL line in ``RESULTS``; conftest prints the
collected lines at the end of the session (also visible per test with ``-s``).
"""

import itertools
import math
import time

import pytest

from familygen import brute_optimum, random_t_intersecting, seeded
from partite_ekr.analysis import (
    is_nontrivial_intersecting_family,
    is_nontrivial_matching_family,
    is_t_intersecting,
    matching_number,
    projection_family,
    transversal_number,
)
from partite_ekr.cli import large_n_points
from partite_ekr.constructions import (
    construct_E,
    construct_K_rt,
    construct_W_r,
    construct_W_rt,
    iota0_branch_K,
    iota0_branch_W,
    lemma_I1_lhs,
    lemma_I1_rhs,
    m0_s,
    m0_s1,
    uniform_max,
)
from partite_ekr.model import Family, PartSpec
from partite_ekr.search import ABOVE, EQUAL, SearchProblem, solve, solve_uniform, verify_theorem
from partite_ekr.shifting import apply_shift, is_coordinatewise_shifted, shift_closure_preserving_nontriviality
from partite_ekr.sunflower import (
    GroundedSetFamily,
    base_of_partite_family,
    compute_base,
    set_matching_number,
    shrink,
)

RESULTS: dict[str, str] = {}


def record(key, ok, detail):
    line = f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[key] = line
    print(line)
    return ok


def desc_triples(max_n):
    return [s for s in itertools.product(range(max_n, 1, -1), repeat=3) if s[0] >= s[1] >= s[2]]


# ---------------------------------------------------------------- 1-3 exact small theorems

def test_criterion_1_asymmetric_r3_matching():
    bad, slowest = [], 0.0
    for sizes in desc_triples(4):
        rep = verify_theorem("m0_asym3", sizes)
        slowest = max(slowest, rep.result.wall_time)
        if rep.verdict != EQUAL or rep.result.optimum != sum(sizes) - 2 or rep.result.wall_time >= 60:
            bad.append(sizes)
    assert record("1", not bad, f"{len(desc_triples(4))} triples, slowest {slowest:.2f}s, mismatches {bad}")


def test_criterion_2_symmetric_matching_s1():
    start, bad = time.perf_counter(), []
    for r, n in [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)]:
        result = solve(SearchProblem.matching(PartSpec.uniform(r, n), 1))
        if not result.exhaustive or result.optimum != m0_s1(n, r):
            bad.append((r, n, result.optimum))
    elapsed = time.perf_counter() - start
    assert record("2", not bad and elapsed < 600, f"5 points in {elapsed:.2f}s, mismatches {bad}")


def test_criterion_3_intersecting_t_r_minus_2():
    points = desc_triples(4) + [(2, 2, 2, 2), (3, 2, 2, 2), (3, 3, 2, 2)]
    bad = []
    for sizes in points:
        result = solve(SearchProblem.intersecting(PartSpec(sizes), len(sizes) - 2))
        if not result.exhaustive or result.optimum != sum(sizes) - len(sizes) + 1:
            bad.append((sizes, result.optimum))
    assert record("3", not bad, f"{len(points)} size tuples, mismatches {bad}")


# ---------------------------------------------------------------- 4 uniform families

def test_criterion_4_uniform_maximum_and_witnesses():
    start, bad = time.perf_counter(), []
    for r in range(3, 7):
        for t in range(1, r - 1):
            res = solve_uniform(r, t)
            if res.optimum != uniform_max(r, t) or not res.all_witnesses_named:
                bad.append((r, t))
    elapsed = time.perf_counter() - start
    assert record("4", not bad and elapsed < 60, f"r <= 6 in {elapsed:.2f}s, failures {bad}")


# ---------------------------------------------------------------- 5-6 constructions

def grid():
    for r in range(3, 7):
        for n in range(2, 6):
            yield r, n, PartSpec.uniform(r, n)


def test_criterion_5_construction_sizes():
    bad, count = [], 0
    for r, n, spec in grid():
        checks = [("W_r", len(construct_W_r(spec)), m0_s1(n, r))]
        checks += [(f"E s={s}", len(construct_E(spec, s)), m0_s(s, n, r)) for s in range(1, n)]
        for t in range(1, r - 1):
            checks.append((f"W_rt t={t}", len(construct_W_rt(spec, t)), iota0_branch_W(t, n, r)))
            checks.append((f"K_rt t={t}", len(construct_K_rt(spec, t)), iota0_branch_K(t, n, r)))
        count += len(checks)
        bad += [(r, n, name, got, want) for name, got, want in checks if got != want]
    assert record("5", not bad, f"{count} identities over r <= 6, n <= 5, mismatches {bad[:3]}")


def test_criterion_6_construction_properties():
    bad, count = [], 0
    for r, n, spec in grid():
        for s in range(1, n):
            f = construct_E(spec, s)
            count += 1
            if matching_number(f)[0] != s or transversal_number(f)[0] != s + 1:
                bad.append(("E", r, n, s))
        for t in range(1, r - 1):
            for name, f in (("W_rt", construct_W_rt(spec, t)), ("K_rt", construct_K_rt(spec, t))):
                count += 1
                if not is_nontrivial_intersecting_family(f, t):
                    bad.append((name, r, n, t))
    assert record("6", not bad, f"{count} families checked, failures {bad}")


# ---------------------------------------------------------------- 7 large-n substitutes

def large_points():
    yield from large_n_points(100, 4, 4)
    for t in (1, 2, 3):
        yield "iota0_t", (2,) * 5, t
    for t in (1, 2):
        yield "iota0_t", (2,) * 6, t


@pytest.fixture(scope="module")
def large_reports():
    return [verify_theorem(tid, sizes, param, budget=10**6) for tid, sizes, param in large_points()]


def test_criterion_7a_search_dominates_constructions(large_reports):
    checked = [r for r in large_reports if r.construction_size is not None]
    bad = [r.row() for r in checked if r.result.optimum < r.construction_size or r.contradiction]
    partial = sum(not r.result.exhaustive for r in checked)
    ok = record("7a", not bad, f"{len(checked)} points, {partial} cut by the node budget, violations {bad}")
    assert ok


def test_criterion_7c_small_n_excess_is_a_regime_note(large_reports):
    above = [r for r in large_reports if r.verdict == ABOVE]
    bad = [r.row() for r in above if r.contradiction or "regime note" not in r.note]
    ok = record("7c", bool(above) and not bad,
                f"{len(above)} points above the large-n formula, all logged as regime notes" if not bad else f"{bad}")
    assert ok


@pytest.mark.parametrize("r", [
    4,
    pytest.param(6, marks=pytest.mark.xfail(strict=True, reason="the two branches differ by 3(n-1)^2 at r=6, t=2")),
])
def test_criterion_7b_phase_transition_tie(r):
    t = r // 2 - 1
    bad = [(n, iota0_branch_W(t, n, r), iota0_branch_K(t, n, r))
           for n in range(2, 101) if iota0_branch_W(t, n, r) != iota0_branch_K(t, n, r)]
    detail = f"r={r}, t={t}, n <= 100: " + ("branches equal" if not bad else f"W vs K differ, first {bad[0]}")
    record(f"7b r={r}", not bad, detail)
    assert not bad


# ---------------------------------------------------------------- 8 shifting

SHIFT_CONFIGS = [(3, 3, 1), (4, 2, 1), (4, 3, 1), (4, 3, 2), (5, 2, 1), (5, 2, 2), (5, 2, 3)]


def test_criterion_8_shifting_properties():
    violations, closures = [], 0
    for r, n, t in SHIFT_CONFIGS:
        spec = PartSpec.uniform(r, n)
        rng = seeded(1000 * r + 10 * n + t)
        for i in range(1000):
            f = random_t_intersecting(spec, t, rng, target=rng.randint(2, 25))
            ell, j = rng.randint(1, r), rng.randint(2, n)
            once = apply_shift(f, ell, j).family
            if len(once) != len(f):
                violations.append(("size", r, n, t, i))
            if not is_t_intersecting(once, t):
                violations.append(("t-intersecting", r, n, t, i))
            if apply_shift(once, ell, j).family != once:
                violations.append(("idempotence", r, n, t, i))
            if not is_nontrivial_intersecting_family(f, t):
                continue
            out, rep = shift_closure_preserving_nontriviality(f, t)
            if rep.b or not is_coordinatewise_shifted(out):
                continue
            closures += 1
            proj = projection_family(out).sets
            pairwise = all(len(a & b) >= t for a, b in itertools.combinations(proj, 2))
            if not pairwise or len(frozenset.intersection(*proj)) >= t:
                violations.append(("projection", r, n, t, i))
    ok = record("8", not violations,
                f"{len(SHIFT_CONFIGS)} configurations x 1000 families, {closures} shifted closures, "
                f"violations {violations[:5]}")
    assert ok


# ---------------------------------------------------------------- 9 bases and sunflowers

def test_criterion_9_base_and_sunflower():
    worked = GroundedSetFamily.of([{1, 2}, {1, 3, 4}, {1, 3, 5}, {2, 3}, {3, 4, 5}])
    f1 = shrink(worked, {1})
    f2 = shrink(f1, {3})
    rejected = shrink(f1, {4})
    example_ok = (
        f2.as_lists() == [[1], [3]]
        and set_matching_number(rejected) > set_matching_number(worked)
        and compute_base(worked).family.as_lists() == [[1], [3]]
    )
    rng = seeded(9)
    counts, bad = {1: 0, 2: 0}, []
    while min(counts.values()) < 100:
        s = 1 if counts[1] < 100 else 2
        sizes = tuple(rng.randint(s + 1, 4) for _ in range(3))
        spec = PartSpec(sizes)
        vectors = list(spec.vectors())
        f = Family(spec, rng.sample(vectors, rng.randint(s + 1, min(len(vectors), 12))))
        if not is_nontrivial_matching_family(f, s) or matching_number(f)[0] != s:
            continue
        counts[s] += 1
        base = base_of_partite_family(f, s)
        if not all(base.checks.values()):
            bad.append((s, list(f), base.checks))
    ok = record("9", example_ok and not bad,
                f"worked example {'reproduced' if example_ok else 'MISMATCH'}, "
                f"{counts[1]} families with s=1 and {counts[2]} with s=2, failures {len(bad)}")
    assert ok


# ---------------------------------------------------------------- 10 oracle equivalence

def small_instances(max_vectors=16):
    for r in (3, 4):
        for sizes in itertools.product(range(2, max_vectors // 2 ** (r - 1) + 1), repeat=r):
            if math.prod(sizes) > max_vectors:
                continue
            spec = PartSpec(sizes)
            for s in range(1, min(sizes)):
                yield SearchProblem.matching(spec, s)
            for t in range(1, r - 1):
                yield SearchProblem.intersecting(spec, t)


def test_criterion_10_oracle_equivalence():
    problems = list(small_instances())
    bad = []
    for p in problems:
        got, want = solve(p).optimum, brute_optimum(p.spec, p.mode, p.param)
        if got != want:
            bad.append((p.describe(), got, want))
    assert record("10", not bad, f"{len(problems)} instances with <= 16 vectors, mismatches {bad}")


# ---------------------------------------------------------------- 11 inequality and Konig

def test_criterion_11_I1_and_konig():
    i1_bad = [(n, r) for r in range(3, 13) for n in range(2, 101) if lemma_I1_lhs(n, r) < lemma_I1_rhs(n, r)]
    konig_bad = []
    for seed in range(500):
        rng = seeded(seed)
        spec = PartSpec((rng.randint(2, 6), rng.randint(2, 6)))
        vectors = list(spec.vectors())
        f = Family(spec, rng.sample(vectors, rng.randint(0, len(vectors))))
        if matching_number(f)[0] != transversal_number(f)[0]:
            konig_bad.append(seed)
    ok = record("11", not i1_bad and not konig_bad,
                f"I1 over n <= 100, r <= 12: violations {i1_bad[:3]}; nu = tau on 500 bipartite seeds: "
                f"violations {konig_bad}")
    assert ok
