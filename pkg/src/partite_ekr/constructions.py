"""Extremal constructions and the closed-form values they attain.

Every construction is the extension ``H(n_1, ..., n_r)`` of a set family
``H`` on ``[r]``: all vectors whose projection (coordinates equal to 1)
contains some member of ``H``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .model import Family, FamilyError, PartSpec, SetFamily


@dataclass(frozen=True)
class FormulaValue:
    name: str
    params: dict = field(hash=False)
    value: int


# ---------------------------------------------------------------- set families

def W_r(r: int) -> SetFamily:
    if r < 3:
        raise FamilyError(f"W_r needs r >= 3, got {r}")
    sets = [{ell, r} for ell in range(1, r)] + [set(range(1, r))]
    return SetFamily.of(r, sets)


def W_rt(r: int, t: int) -> SetFamily:
    _check_t(r, t)
    head = set(range(1, t + 1))
    sets = [head | {ell} for ell in range(t + 1, r + 1)]
    sets += [set(range(1, r + 1)) - {ell} for ell in range(1, t + 1)]
    return SetFamily.of(r, sets)


def K_rt(r: int, t: int) -> SetFamily:
    _check_t(r, t)
    return SetFamily.of(r, itertools.combinations(range(1, t + 3), t + 1))


def construct_uniform_star(r: int, t: int) -> SetFamily:
    _check_t(r, t)
    head = set(range(1, t + 1))
    return SetFamily.of(r, [head | {i} for i in range(t + 1, r + 1)])


def construct_uniform_simplex(t: int, ground_size: int | None = None) -> SetFamily:
    if t < 1:
        raise FamilyError(f"t={t} must be >= 1")
    ground = t + 2 if ground_size is None else ground_size
    return SetFamily.of(ground, itertools.combinations(range(1, t + 3), t + 1))


def _check_t(r: int, t: int) -> None:
    if not 1 <= t <= r - 2:
        raise FamilyError(f"t={t} outside 1..r-2 for r={r}")


# ---------------------------------------------------------------- extension

def extend(h: SetFamily, spec: PartSpec) -> Family:
    """All vectors ``F`` such that some ``E`` in ``h`` satisfies ``E ⊆ P(F)``."""
    if h.ground_size != spec.r:
        raise FamilyError(f"set family on [{h.ground_size}] cannot extend to r={spec.r}")
    members = [tuple(sorted(e)) for e in h.sets]
    out = []
    for v in spec.vectors():
        for e in members:
            if all(v[ell - 1] == 1 for ell in e):
                out.append(v)
                break
    return Family(spec, out, validate=False)


def construct_W_r(spec: PartSpec) -> Family:
    return extend(W_r(spec.r), spec)


def construct_E(spec: PartSpec, s: int) -> Family:
    """W_r(n) together with every vector whose last coordinate lies in 2..s."""
    if not spec.is_uniform:
        raise FamilyError("E(r, s, n) is defined for equal part sizes only")
    n = spec.sizes[0]
    if not 1 <= s < n:
        raise FamilyError(f"s={s} outside 1..n-1 for n={n}")
    base = construct_W_r(spec).as_set()
    extra = (v for v in spec.vectors() if 2 <= v[-1] <= s)
    return Family(spec, base.union(extra), validate=False)


def construct_W_rt(spec: PartSpec, t: int) -> Family:
    return extend(W_rt(spec.r, t), spec)


def construct_K_rt(spec: PartSpec, t: int) -> Family:
    return extend(K_rt(spec.r, t), spec)


def relabel(family: Family, rng: random.Random, permute_parts: bool = True) -> Family:
    """Random automorphic image: symbol permutations per part, plus a permutation
    of equal-size parts."""
    sizes = family.spec.sizes
    perms = []
    for n in sizes:
        p = list(range(1, n + 1))
        rng.shuffle(p)
        perms.append(p)
    order = list(range(family.r))
    if permute_parts:
        by_size: dict[int, list[int]] = {}
        for i, n in enumerate(sizes):
            by_size.setdefault(n, []).append(i)
        for group in by_size.values():
            shuffled = group[:]
            rng.shuffle(shuffled)
            for src, dst in zip(group, shuffled):
                order[dst] = src
    edges = [tuple(perms[order[i]][e[order[i]] - 1] for i in range(family.r)) for e in family]
    return family.with_edges(edges)


# ---------------------------------------------------------------- closed forms

def _desc(sizes) -> list[int]:
    return sorted((int(n) for n in sizes), reverse=True)


def m0_s1(n: int, r: int) -> int:
    _need(r >= 3 and n >= 2, "m0_s1 needs r >= 3, n >= 2")
    return n ** (r - 1) - (n - 1) ** (r - 1) + n - 1


def m0_s(s: int, n: int, r: int) -> int:
    _need(r >= 3 and 1 <= s < n, "m0_s needs r >= 3 and 1 <= s < n")
    return s * n ** (r - 1) - (n - 1) ** (r - 1) + n - s


def m0_asym3(n1: int, n2: int, n3: int) -> int:
    _need(min(n1, n2, n3) >= 2, "m0_asym3 needs all sizes >= 2")
    return n1 + n2 + n3 - 2


def iota0_r_minus_2(sizes) -> int:
    sizes = list(sizes)
    _need(len(sizes) >= 3 and min(sizes) >= 2, "iota0_r_minus_2 needs r >= 3, sizes >= 2")
    return sum(sizes) - len(sizes) + 1


def iota0_branch_W(t: int, n: int, r: int) -> int:
    _need(1 <= t <= r - 2 and n >= 2, "t outside 1..r-2")
    return n ** (r - t) - (n - 1) ** (r - t) + t * (n - 1)


def iota0_branch_K(t: int, n: int, r: int) -> int:
    _need(1 <= t <= r - 2 and n >= 2, "t outside 1..r-2")
    return (t + 2) * n ** (r - t - 1) - (t + 1) * n ** (r - t - 2)


def iota0_symmetric(t: int, n: int, r: int) -> int:
    return max(iota0_branch_W(t, n, r), iota0_branch_K(t, n, r))


def product_matching_bound(s: int, sizes) -> int:
    """s times the product of all but the smallest part."""
    d = _desc(sizes)
    return s * math.prod(d[:-1])


def m0_asym_branch_E(s: int, sizes) -> int:
    d = _desc(sizes)
    return s * math.prod(d[:-1]) - math.prod(n - 1 for n in d[:-1]) + d[-1] - s


def m0_asym_branch_lift(s: int, sizes) -> int:
    """r = 4 only: n_1 (s n_2 n_3 - (n_2-1)(n_3-1) + n_4 - s)."""
    n1, n2, n3, n4 = _desc(sizes)
    return n1 * (s * n2 * n3 - (n2 - 1) * (n3 - 1) + n4 - s)


def m0_asym(s: int, sizes) -> int:
    d = _desc(sizes)
    _need(len(d) >= 3 and 1 <= s < d[-1], "m0_asym needs r >= 3 and 1 <= s < n_r")
    if len(d) == 4:
        return max(m0_asym_branch_E(s, d), m0_asym_branch_lift(s, d))
    return m0_asym_branch_E(s, d)


def lemma_I1_lhs(n: int, r: int) -> int:
    return n ** (r - 1) - (n - 1) ** (r - 1) + n - 1


def lemma_I1_rhs(n: int, r: int) -> int:
    return 3 * n ** (r - 2) - 2 * n ** (r - 3)


def not_shifted_bound(t: int, n: int, r: int) -> int:
    return iota0_branch_K(t, n, r)


def resistant_count_bound(b: int, t: int, n: int, r: int) -> int:
    """2^(b-1) n^(r-b-t+1) for ``b`` shift-resistant parts."""
    _need(1 <= b <= r - t + 1, f"b={b} outside 1..r-t+1")
    return 2 ** (b - 1) * n ** (r - b - t + 1)


def erdos_rado_bound(rank: int, petals: int) -> int:
    return math.factorial(rank) * (petals - 1) ** rank


def base_size_bound(r: int, s: int) -> int:
    return math.factorial(r) * (r * s) ** r


def uniform_max(r: int, t: int) -> int:
    _check_t(r, t)
    return max(r - t, t + 2)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


FORMULAS: dict[str, Callable[..., int]] = {
    "m0_s1": m0_s1,
    "m0_s": m0_s,
    "m0_asym3": m0_asym3,
    "m0_asym": m0_asym,
    "iota0_r_minus_2": iota0_r_minus_2,
    "iota0_symmetric": iota0_symmetric,
    "iota0_branch_W": iota0_branch_W,
    "iota0_branch_K": iota0_branch_K,
    "product_matching_bound": product_matching_bound,
    "lemma_I1_lhs": lemma_I1_lhs,
    "lemma_I1_rhs": lemma_I1_rhs,
    "not_shifted_bound": not_shifted_bound,
    "erdos_rado_bound": erdos_rado_bound,
    "base_size_bound": base_size_bound,
    "uniform_max": uniform_max,
    # construction sizes
    "size_W_r": lambda n, r: m0_s1(n, r),
    "size_E": lambda s, n, r: m0_s(s, n, r),
    "size_W_rt": lambda t, n, r: iota0_branch_W(t, n, r),
    "size_K_rt": lambda t, n, r: iota0_branch_K(t, n, r),
}


def formula(name: str, **params) -> FormulaValue:
    try:
        fn = FORMULAS[name]
    except KeyError:
        raise FamilyError(f"unknown formula {name!r}") from None
    return FormulaValue(name, dict(params), int(fn(**params)))


CONSTRUCTIONS = ("W_r", "E", "W_rt", "K_rt")


def build(name: str, spec: PartSpec, s: int | None = None, t: int | None = None) -> Family:
    """Construction by name, as addressed from the command line."""
    if name == "W_r":
        return construct_W_r(spec)
    if name == "E":
        _need(s is not None, "construction E needs s")
        return construct_E(spec, s)
    if name == "W_rt":
        _need(t is not None, "construction W_rt needs t")
        return construct_W_rt(spec, t)
    if name == "K_rt":
        _need(t is not None, "construction K_rt needs t")
        return construct_K_rt(spec, t)
    raise FamilyError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def size_formula(name: str, spec: PartSpec, s: int | None = None, t: int | None = None) -> FormulaValue | None:
    """Closed-form size of a construction (equal part sizes only)."""
    if not spec.is_uniform:
        return None
    n, r = spec.sizes[0], spec.r
    if name == "W_r":
        return formula("size_W_r", n=n, r=r)
    if name == "E":
        return formula("size_E", s=s, n=n, r=r)
    if name == "W_rt":
        return formula("size_W_rt", t=t, n=n, r=r)
    if name == "K_rt":
        return formula("size_K_rt", t=t, n=n, r=r)
    return None
