"""Shrinking, bases and sunflowers on families of finite sets."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from ._bits import iter_bits, lowest
from .analysis import has_cover_of_size, has_matching_of_size, matching_number
from .constructions import base_size_bound, erdos_rado_bound
from .model import Family, FamilyError, Vertex, set_sort_key


@dataclass(frozen=True)
class GroundedSetFamily:
    ground: frozenset
    sets: frozenset

    def __post_init__(self) -> None:
        sets = frozenset(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "ground", frozenset(self.ground))
        for s in sets:
            if not s <= self.ground:
                raise FamilyError(f"member {sorted(s)} is not contained in the ground set")

    @classmethod
    def of(cls, sets: Iterable[Iterable[Hashable]], ground: Iterable[Hashable] | None = None) -> GroundedSetFamily:
        sets = [frozenset(s) for s in sets]
        if ground is None:
            ground = frozenset().union(*sets) if sets else frozenset()
        return cls(frozenset(ground), frozenset(sets))

    @property
    def rank(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.members())

    def members(self) -> list[frozenset]:
        return sorted(self.sets, key=set_sort_key)

    def with_sets(self, sets: Iterable[frozenset]) -> GroundedSetFamily:
        return GroundedSetFamily(self.ground, frozenset(sets))

    def as_lists(self) -> list[list]:
        return [_jsonable(sorted(s)) for s in self.members()]


def _jsonable(elems: list) -> list:
    return [list(x) if isinstance(x, tuple) else x for x in elems]


@dataclass(frozen=True)
class Sunflower:
    core: frozenset
    petals: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        if not self.petals:
            raise FamilyError("a sunflower needs at least one member")
        common = frozenset.intersection(*self.petals)
        if common != self.core:
            raise FamilyError("core must equal the intersection of all members")
        outer = [p - self.core for p in self.petals]
        for a, b in itertools.combinations(outer, 2):
            if a & b:
                raise FamilyError("petals overlap outside the core")


# ---------------------------------------------------------------- set matching / cover

class _Indexed:
    """Members as element bitmasks plus per-element incidence over members."""

    def __init__(self, members: list[frozenset]):
        elems = sorted(frozenset().union(*members), key=_elem_key) if members else []
        pos = {x: i for i, x in enumerate(elems)}
        self.members = members
        self.emask = [sum(1 << pos[x] for x in m) for m in members]
        self.inc = [0] * len(elems)
        for i, m in enumerate(members):
            for x in m:
                self.inc[pos[x]] |= 1 << i
        self.conflict = []
        for i, em in enumerate(self.emask):
            c = 1 << i
            for el in iter_bits(em):
                c |= self.inc[el]
            self.conflict.append(c)
        self.all = (1 << len(members)) - 1

    def greedy(self, mask: int) -> int:
        k = 0
        while mask:
            mask &= ~self.conflict[lowest(mask)]
            k += 1
        return k

    def max_matching(self, mask: int | None = None, target: int | None = None) -> int:
        mask = self.all if mask is None else mask
        best = self.greedy(mask)
        if target is not None and best >= target:
            return best
        inc, conflict = self.inc, self.conflict

        class Done(Exception):
            pass

        def rec(rem: int, depth: int) -> None:
            nonlocal best
            if depth > best:
                best = depth
                if target is not None and best >= target:
                    raise Done
            if not rem or depth + rem.bit_count() <= best:
                return
            # members without any element are disjoint from everything
            pick, count = 0, -1
            for m in inc:
                m &= rem
                if m:
                    c = m.bit_count()
                    if count < 0 or c < count:
                        pick, count = m, c
            if not pick:
                rec(0, depth + rem.bit_count())
                return
            for i in iter_bits(pick):
                rec(rem & ~conflict[i], depth + 1)
            rec(rem & ~pick, depth)

        try:
            rec(mask, 0)
        except Done:
            pass
        return best


def _elem_key(x):
    return (0, x) if isinstance(x, int) else (1, tuple(x))


def set_matching_number(family: GroundedSetFamily) -> int:
    """Maximum number of pairwise disjoint members."""
    return _Indexed(family.members()).max_matching()


def set_transversal_number(family: GroundedSetFamily) -> int:
    """Minimum number of ground elements meeting every member."""
    members = family.members()
    if any(not m for m in members):
        raise FamilyError("the empty set has no transversal")
    ix = _Indexed(members)
    best = len(ix.inc)

    def rec(unhit: int, used: int) -> None:
        nonlocal best
        if not unhit:
            best = min(best, used)
            return
        if used + ix.greedy(unhit) >= best:
            return
        i = min(iter_bits(unhit), key=lambda j: (ix.emask[j].bit_count(), j))
        for el in iter_bits(ix.emask[i]):
            rec(unhit & ~ix.inc[el], used + 1)

    rec(ix.all, 0)
    return best


# ---------------------------------------------------------------- shrinking and bases

def shrink(family: GroundedSetFamily, core: Iterable) -> GroundedSetFamily:
    """Replace every superset of ``core`` by ``core`` itself."""
    core = frozenset(core)
    if not core:
        raise FamilyError("cannot shrink with respect to the empty set")
    if not any(core < m for m in family.sets):
        raise FamilyError(f"{sorted(core, key=_elem_key)} is not a proper subset of any member")
    kept = [m for m in family.sets if not core <= m]
    return family.with_sets(kept + [core])


@dataclass(frozen=True)
class ShrinkStep:
    op: str  # "minimize" or "shrink"
    core: tuple
    replaced: tuple
    nu_before: int
    nu_after: int
    accepted: bool

    def as_dict(self) -> dict:
        return {
            "op": self.op,
            "core": _jsonable(list(self.core)),
            "replaced": [_jsonable(list(m)) for m in self.replaced],
            "nu_before": self.nu_before,
            "nu_after": self.nu_after,
            "accepted": self.accepted,
        }


@dataclass
class BaseFamily:
    family: GroundedSetFamily
    provenance: list[ShrinkStep] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def sets(self) -> frozenset:
        return self.family.sets

    def rho(self) -> dict[int, int]:
        """Number of members of each cardinality."""
        out: dict[int, int] = {}
        for s in self.family.sets:
            out[len(s)] = out.get(len(s), 0) + 1
        return dict(sorted(out.items()))

    def provenance_jsonl(self) -> str:
        return "".join(json.dumps(step.as_dict(), sort_keys=True) + "\n" for step in self.provenance)


def minimal_members(family: GroundedSetFamily) -> GroundedSetFamily:
    sets = family.sets
    return family.with_sets(m for m in sets if not any(o < m for o in sets))


def _proper_subsets(member: frozenset):
    elems = sorted(member, key=_elem_key)
    for k in range(len(elems) - 1, 0, -1):
        for combo in itertools.combinations(elems, k):
            yield frozenset(combo)


def compute_base(family: GroundedSetFamily) -> BaseFamily:
    """Shrink to a base: members in canonical order, candidate cores by decreasing
    size then lexicographically; the first shrink that keeps the matching number
    is accepted and the scan restarts."""
    nu = set_matching_number(family)
    log: list[ShrinkStep] = []
    current = minimal_members(family)
    dropped = sorted(family.sets - current.sets, key=set_sort_key)
    if dropped:
        log.append(ShrinkStep("minimize", (), tuple(tuple(sorted(m, key=_elem_key)) for m in dropped), nu, nu, True))
    progress = True
    while progress:
        progress = False
        for member in current.members():
            for core in _proper_subsets(member):
                candidate = shrink(current, core)
                replaced = sorted((m for m in current.sets if core <= m), key=set_sort_key)
                nu_after = set_matching_number(candidate)
                ok = nu_after <= nu
                log.append(ShrinkStep(
                    "shrink",
                    tuple(sorted(core, key=_elem_key)),
                    tuple(tuple(sorted(m, key=_elem_key)) for m in replaced),
                    nu, nu_after, ok,
                ))
                if ok:
                    current = candidate
                    progress = True
                    break
            if progress:
                break
    return BaseFamily(current, log)


def replay(family: GroundedSetFamily, steps: Iterable[ShrinkStep]) -> GroundedSetFamily:
    current = family
    for step in steps:
        if not step.accepted:
            continue
        if step.op == "minimize":
            current = minimal_members(current)
        else:
            current = shrink(current, _thaw(step.core))
    return current


def _thaw(elems) -> frozenset:
    return frozenset(tuple(x) if isinstance(x, list) else x for x in elems)


def steps_from_jsonl(text: str) -> list[ShrinkStep]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        out.append(ShrinkStep(
            d["op"],
            tuple(tuple(x) if isinstance(x, list) else x for x in d["core"]),
            tuple(tuple(tuple(x) if isinstance(x, list) else x for x in m) for m in d["replaced"]),
            d["nu_before"], d["nu_after"], d["accepted"],
        ))
    return out


def is_base_of(base: GroundedSetFamily, original: GroundedSetFamily) -> dict[str, bool]:
    """The four defining properties of a base, checked exhaustively."""
    members = base.sets
    antichain = not any(a < b for a in members for b in members)
    contained = all(any(b <= f for b in members) for f in original.sets)
    nu = set_matching_number(base)
    same_nu = nu == set_matching_number(original)
    minimal = True
    for b in members:
        for core in _proper_subsets(b):
            if set_matching_number(shrink(base, core)) <= nu:
                minimal = False
                break
        if not minimal:
            break
    return {"antichain": antichain, "contains": contained, "same_nu": same_nu, "unshrinkable": minimal}


# ---------------------------------------------------------------- sunflowers

def find_sunflower(family: GroundedSetFamily, petal_count: int) -> Sunflower | None:
    """A sunflower with exactly ``petal_count`` members, or ``None``.

    Cores are drawn from pairwise intersections of members; for each core the
    reduced petals are searched for a large enough disjoint sub-collection.
    """
    if petal_count < 1:
        raise FamilyError("petal_count must be >= 1")
    members = family.members()
    if len(members) < petal_count:
        return None
    if petal_count == 1:
        return Sunflower(members[0], (members[0],))
    cores = {a & b for a, b in itertools.combinations(members, 2)}
    for core in sorted(cores, key=lambda c: (len(c), set_sort_key(c))):
        over = [m for m in members if core <= m]
        if len(over) < petal_count:
            continue
        reduced = [m - core for m in over]
        ix = _Indexed(reduced)
        if ix.max_matching(target=petal_count) < petal_count:
            continue
        chosen = _pick_disjoint(reduced, petal_count)
        return Sunflower(core, tuple(over[i] for i in chosen))
    return None


def _pick_disjoint(sets: list[frozenset], k: int) -> list[int]:
    """Lexicographically first ``k`` pairwise disjoint sets (one exists)."""
    ix = _Indexed(sets)
    chosen: list[int] = []
    rem = ix.all
    for need in range(k, 0, -1):
        for i in iter_bits(rem):
            nxt = rem & ~ix.conflict[i] & ~((1 << (i + 1)) - 1)
            if need == 1 or ix.max_matching(nxt, need - 1) >= need - 1:
                chosen.append(i)
                rem = nxt
                break
    return chosen


@dataclass(frozen=True)
class ErdosRadoReport:
    size: int
    rank: int
    petal_count: int
    bound: int
    exceeds: bool
    sunflower: Sunflower | None


def erdos_rado_check(family: GroundedSetFamily, petal_count: int) -> ErdosRadoReport:
    """Above rank! (k-1)^rank members a k-petal sunflower must exist, and is returned."""
    bound = erdos_rado_bound(family.rank, petal_count)
    exceeds = len(family) > bound
    flower = find_sunflower(family, petal_count) if exceeds else None
    if exceeds and flower is None:
        raise RuntimeError("family exceeds the Erdos-Rado bound but no sunflower was found")
    return ErdosRadoReport(len(family), family.rank, petal_count, bound, exceeds, flower)


# ---------------------------------------------------------------- partite bases

def partite_to_sets(family: Family) -> GroundedSetFamily:
    ground = family.spec.vertices()
    sets = [frozenset(Vertex(ell, a) for ell, a in enumerate(e, start=1)) for e in family]
    return GroundedSetFamily.of(sets, ground)


def base_of_partite_family(family: Family, s: int) -> BaseFamily:
    """Base of a family with nu <= s < tau, with the forced base properties checked.

    ``checks`` records: nu(B) = nu(F) <= s < tau(B); no sunflower with rs+1
    petals; |B| <= r!(rs)^r.
    """
    if s < 1:
        raise FamilyError("s must be >= 1")
    if has_cover_of_size(family, s):
        raise FamilyError(f"family is trivial: it has a transversal of size <= {s}")
    if has_matching_of_size(family, s + 1):
        raise FamilyError(f"family has a matching larger than s={s}")
    r = family.r
    nu_f, _ = matching_number(family)
    base = compute_base(partite_to_sets(family))
    nu_b = set_matching_number(base.family)
    tau_b = set_transversal_number(base.family)
    petals = r * s + 1
    base.checks = {
        "nu(B) = nu(F)": nu_b == nu_f,
        "nu(B) <= s < tau(B)": nu_b <= s < tau_b,
        f"no sunflower with {petals} petals": find_sunflower(base.family, petals) is None,
        f"|B| <= r!(rs)^r = {base_size_bound(r, s)}": len(base.family) <= base_size_bound(r, s),
    }
    return base
