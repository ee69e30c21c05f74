"""Exact invariants of partite families: intersections, nu, tau, fixed coordinates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import IndexedEdges, iter_bits, lowest
from .model import Edge, Family, FamilyError, SetFamily, Vertex


@dataclass(frozen=True)
class MatchingWitness:
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        for i, a in enumerate(self.edges):
            for b in self.edges[i + 1:]:
                if intersection_size(a, b):
                    raise FamilyError(f"matching witness edges {a} and {b} intersect")

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TransversalWitness:
    vertices: tuple[Vertex, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def covers(self, family: Family) -> bool:
        return all(any(e[v.part - 1] == v.symbol for v in self.vertices) for e in family)


@dataclass(frozen=True)
class AnalysisReport:
    nu: int
    tau: int
    min_pairwise_intersection: int
    fixed_coords: frozenset[int] | None  # None: undefined for the empty family
    nu_witness: MatchingWitness
    tau_witness: TransversalWitness

    def as_dict(self) -> dict:
        return {
            "nu": self.nu,
            "tau": self.tau,
            "min_pairwise_intersection": self.min_pairwise_intersection,
            "fixed_coords": None if self.fixed_coords is None else sorted(self.fixed_coords),
            "nu_witness": [list(e) for e in self.nu_witness.edges],
            "tau_witness": [list(v) for v in self.tau_witness.vertices],
        }


def intersection_size(a: Edge, b: Edge) -> int:
    if len(a) != len(b):
        raise FamilyError(f"edges {a} and {b} have different arity")
    return sum(x == y for x, y in zip(a, b))


def _pairwise_min(family: Family, stop_below: int | None = None) -> int:
    r = family.r
    if len(family) <= 1:
        return r
    arr = np.asarray(family.edges, dtype=np.int32)
    best = r
    for i in range(len(arr) - 1):
        m = int((arr[i + 1:] == arr[i]).sum(axis=1).min())
        if m < best:
            best = m
            if stop_below is not None and best < stop_below:
                break
    return best


def min_pairwise_intersection(family: Family) -> int:
    """Smallest |A ∩ B| over distinct pairs; ``r`` when the family has at most one edge."""
    return _pairwise_min(family)


def is_t_intersecting(family: Family, t: int) -> bool:
    if not 0 <= t <= family.r:
        raise FamilyError(f"t={t} outside 0..{family.r}")
    return _pairwise_min(family, stop_below=t) >= t


def fixed_coordinates(family: Family) -> frozenset[int] | None:
    """Coordinates constant across the family; ``None`` for the empty family."""
    if not len(family):
        return None
    first = family.edges[0]
    return frozenset(
        ell for ell in range(1, family.r + 1)
        if all(e[ell - 1] == first[ell - 1] for e in family.edges)
    )


def projection(edge: Edge) -> frozenset[int]:
    return frozenset(ell for ell, a in enumerate(edge, start=1) if a == 1)


def projection_family(family: Family) -> SetFamily:
    return SetFamily(family.r, frozenset(projection(e) for e in family))


# ---------------------------------------------------------------- matching

class _Found(Exception):
    pass


def _max_matching(ix: IndexedEdges, mask: int, target: int | None = None) -> int:
    """Maximum matching size inside ``mask``; stops early once ``target`` is reached.

    Branches on the vertex carrying the fewest remaining edges: either one of
    its edges is matched or the vertex stays unmatched.  Upper bound per node
    is the number of symbols still carried by the scarcest part.
    """
    best = ix.greedy_matching(mask)
    if target is not None and best >= target:
        return best
    inc = ix.inc

    def rec(rem: int, depth: int) -> None:
        nonlocal best
        if depth > best:
            best = depth
            if target is not None and best >= target:
                raise _Found
        if not rem:
            return
        avail = None
        pick = 0
        pick_count = -1
        for row in inc:
            c = 0
            for m in row:
                m &= rem
                if m:
                    c += 1
                    k = m.bit_count()
                    if pick_count < 0 or k < pick_count:
                        pick, pick_count = m, k
            if avail is None or c < avail:
                avail = c
        if depth + avail <= best:
            return
        for e in iter_bits(pick):
            rec(rem & ~ix.conflict(e), depth + 1)
        rec(rem & ~pick, depth)

    try:
        rec(mask, 0)
    except _Found:
        pass
    return best


def matching_number(family: Family) -> tuple[int, MatchingWitness]:
    """Exact nu with the lexicographically least maximum matching as witness."""
    if not len(family):
        return 0, MatchingWitness(())
    ix = IndexedEdges(family.edges, family.spec.sizes)
    nu = _max_matching(ix, ix.all)
    chosen: list[int] = []
    rem = ix.all
    need = nu
    while need:
        for e in iter_bits(rem):
            above = ~((1 << (e + 1)) - 1)
            nxt = rem & ~ix.conflict(e) & above
            if need == 1 or _max_matching(ix, nxt, need - 1) >= need - 1:
                chosen.append(e)
                rem = nxt
                need -= 1
                break
        else:  # pragma: no cover - nu is attained by construction
            raise RuntimeError("lexicographic matching refinement failed")
    return nu, MatchingWitness(tuple(family.edges[i] for i in chosen))


def has_matching_of_size(family: Family, k: int) -> bool:
    if k <= 0:
        return True
    ix = IndexedEdges(family.edges, family.spec.sizes)
    return _max_matching(ix, ix.all, k) >= k


# ---------------------------------------------------------------- transversal

class _Cover:
    def __init__(self, ix: IndexedEdges):
        self.ix = ix
        self.offset = []
        acc = 0
        for n in ix.sizes:
            self.offset.append(acc)
            acc += n
        self.n_vertices = acc
        self.vmask = [row[x] for row in ix.inc for x in range(len(row))]
        self.vertex = [Vertex(p + 1, x + 1) for p, n in enumerate(ix.sizes) for x in range(n)]

    def minimum(self) -> int:
        ix = self.ix
        # a whole part (restricted to used symbols) is always a cover
        best = min(sum(1 for m in row if m) for row in ix.inc)

        def rec(unc: int, used: int) -> None:
            nonlocal best
            if not unc:
                best = min(best, used)
                return
            if used + ix.greedy_matching(unc) >= best:
                return
            e = lowest(unc)
            for p, a in enumerate(ix.edges[e]):
                rec(unc & ~ix.inc[p][a - 1], used + 1)

        rec(ix.all, 0)
        return best

    def coverable(self, unc: int, k: int, floor: int) -> bool:
        """Can ``unc`` be covered by ``k`` vertices with index >= ``floor``?"""
        if not unc:
            return True
        if k == 0 or self.ix.greedy_matching(unc) > k:
            return False
        e = lowest(unc)
        for p, a in enumerate(self.ix.edges[e]):
            v = self.offset[p] + a - 1
            if v >= floor and self.coverable(unc & ~self.vmask[v], k - 1, floor):
                return True
        return False


def transversal_number(family: Family) -> tuple[int, TransversalWitness]:
    """Exact tau with the lexicographically least minimum transversal as witness."""
    if not len(family):
        return 0, TransversalWitness(())
    ix = IndexedEdges(family.edges, family.spec.sizes)
    cov = _Cover(ix)
    tau = cov.minimum()
    chosen: list[int] = []
    unc = ix.all
    floor = 0
    for need in range(tau, 0, -1):
        for v in range(floor, cov.n_vertices):
            nxt = unc & ~cov.vmask[v]
            if nxt != unc and cov.coverable(nxt, need - 1, v + 1):
                chosen.append(v)
                unc = nxt
                floor = v + 1
                break
        else:  # pragma: no cover
            raise RuntimeError("lexicographic cover refinement failed")
    return tau, TransversalWitness(tuple(cov.vertex[v] for v in chosen))


def has_cover_of_size(family: Family, k: int) -> bool:
    if not len(family):
        return True
    ix = IndexedEdges(family.edges, family.spec.sizes)
    return _Cover(ix).coverable(ix.all, k, 0)


# ---------------------------------------------------------------- predicates

def is_nontrivial_matching_family(family: Family, s: int) -> bool:
    """nu(F) <= s < tau(F)."""
    if s < 1:
        raise FamilyError(f"s={s} must be >= 1")
    if not len(family):
        return False
    if has_cover_of_size(family, s):
        return False
    return not has_matching_of_size(family, s + 1)


def is_nontrivial_intersecting_family(family: Family, t: int) -> bool:
    """t-intersecting with fewer than t constant coordinates."""
    if not 1 <= t < family.r:
        raise FamilyError(f"t={t} outside 1..{family.r - 1}")
    fixed = fixed_coordinates(family)
    if fixed is None or len(fixed) >= t:
        return False
    return is_t_intersecting(family, t)


def analyze(family: Family) -> AnalysisReport:
    nu, mw = matching_number(family)
    tau, tw = transversal_number(family)
    return AnalysisReport(
        nu=nu,
        tau=tau,
        min_pairwise_intersection=min_pairwise_intersection(family),
        fixed_coords=fixed_coordinates(family),
        nu_witness=mw,
        tau_witness=tw,
    )
