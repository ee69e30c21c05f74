"""Product-space data model: part specs, edges, partite families, set families.

Edges are plain tuples of 1-indexed symbols.  A :class:`Family` keeps both a
frozenset (membership) and the lexicographically sorted tuple (iteration and
serialization); equality is set equality plus equal part sizes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

Edge = tuple[int, ...]

DEFAULT_MAX_VECTORS = 10**6


class FamilyError(ValueError):
    """Invalid edge, spec, or family text."""


class BudgetExceeded(FamilyError):
    """The product space is larger than the configured vector budget."""


class Vertex(NamedTuple):
    part: int
    symbol: int


@dataclass(frozen=True)
class PartSpec:
    sizes: tuple[int, ...]
    max_vectors: int = field(default=DEFAULT_MAX_VECTORS, compare=False, repr=False)

    def __post_init__(self) -> None:
        sizes = tuple(int(n) for n in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise FamilyError(f"need r >= 2 parts, got r={len(sizes)}")
        for ell, n in enumerate(sizes, start=1):
            if n < 2:
                raise FamilyError(f"part {ell} has size {n}; every part needs size >= 2")
        if self.n_vectors > self.max_vectors:
            raise BudgetExceeded(
                f"product of sizes {self.n_vectors} exceeds the vector budget {self.max_vectors}"
            )

    @classmethod
    def uniform(cls, r: int, n: int, max_vectors: int = DEFAULT_MAX_VECTORS) -> PartSpec:
        return cls((n,) * r, max_vectors=max_vectors)

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def n_vectors(self) -> int:
        return math.prod(self.sizes)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.sizes)) == 1

    def vectors(self) -> Iterator[Edge]:
        """All vectors of the product space in lexicographic order."""
        return itertools.product(*(range(1, n + 1) for n in self.sizes))

    def vertices(self) -> list[Vertex]:
        return [Vertex(ell, x) for ell, n in enumerate(self.sizes, start=1) for x in range(1, n + 1)]

    def check_edge(self, edge: Sequence[int], index: int | None = None) -> Edge:
        where = "" if index is None else f"edge {index}: "
        if len(edge) != self.r:
            raise FamilyError(f"{where}arity {len(edge)} does not match r={self.r}")
        out = tuple(int(a) for a in edge)
        for ell, (a, n) in enumerate(zip(out, self.sizes), start=1):
            if not 1 <= a <= n:
                raise FamilyError(f"{where}coordinate {a} out of range 1..{n} in part {ell}")
        return out


def canonical_sort_key(edge: Edge) -> Edge:
    # tuples already compare lexicographically
    return tuple(edge)


class Family:
    """An immutable set of distinct edges over one :class:`PartSpec`."""

    __slots__ = ("spec", "edges", "_members")

    def __init__(self, spec: PartSpec, edges: Iterable[Sequence[int]] = (), *, validate: bool = True):
        if validate:
            members = frozenset(spec.check_edge(e, i) for i, e in enumerate(edges))
        else:
            members = frozenset(edges)
        self.spec = spec
        self._members = members
        self.edges: tuple[Edge, ...] = tuple(sorted(members))

    @property
    def r(self) -> int:
        return self.spec.r

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge: object) -> bool:
        return edge in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.spec.sizes == other.spec.sizes and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.spec.sizes, self._members))

    def __repr__(self) -> str:
        return f"Family(sizes={self.spec.sizes}, edges={list(self.edges)})"

    def as_set(self) -> frozenset[Edge]:
        return self._members

    def with_edges(self, edges: Iterable[Edge]) -> Family:
        """Family over the same spec; edges are assumed valid."""
        return Family(self.spec, edges, validate=False)

    def issubset(self, other: Family) -> bool:
        return self._members <= other._members


def make_family(spec: PartSpec, edges: Iterable[Sequence[int]]) -> Family:
    """Validate, deduplicate and canonically order ``edges``."""
    return Family(spec, edges)


def complete_family(spec: PartSpec) -> Family:
    return Family(spec, spec.vectors(), validate=False)


@dataclass(frozen=True)
class SetFamily:
    """A family of subsets of the ground set ``{1, ..., ground_size}``."""

    ground_size: int
    sets: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        sets = frozenset(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for s in sets:
            if any(not 1 <= x <= self.ground_size for x in s):
                raise FamilyError(f"member {sorted(s)} is not a subset of [{self.ground_size}]")

    @classmethod
    def of(cls, ground_size: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls(ground_size, frozenset(frozenset(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.sorted_members())

    def __contains__(self, item: object) -> bool:
        return frozenset(item) in self.sets  # type: ignore[arg-type]

    def sorted_members(self) -> list[frozenset[int]]:
        return sorted(self.sets, key=set_sort_key)

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sorted_members()]


def set_sort_key(s: Iterable) -> tuple:
    return tuple(sorted(s))


# Canonical family text format

def dumps_family(family: Family) -> str:
    lines = [f"PARTITE {family.r}", "SIZES " + " ".join(map(str, family.spec.sizes))]
    lines.extend(" ".join(map(str, e)) for e in family.edges)
    return "\n".join(lines) + "\n"


def loads_family(text: str, max_vectors: int = DEFAULT_MAX_VECTORS) -> Family:
    """Parse the canonical text format; ``#`` lines and blank lines are skipped."""
    r: int | None = None
    spec: PartSpec | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            if r is None:
                if tokens[0] != "PARTITE" or len(tokens) != 2:
                    raise FamilyError("expected 'PARTITE <r>'")
                r = int(tokens[1])
            elif spec is None:
                if tokens[0] != "SIZES" or len(tokens) != r + 1:
                    raise FamilyError(f"expected 'SIZES' followed by {r} integers")
                spec = PartSpec(tuple(int(x) for x in tokens[1:]), max_vectors=max_vectors)
            else:
                edges.append(spec.check_edge([int(x) for x in tokens]))
        except (FamilyError, ValueError) as exc:
            raise FamilyError(f"line {lineno}: {exc}") from None
    if spec is None:
        raise FamilyError("missing PARTITE/SIZES header")
    return Family(spec, edges, validate=False)


def read_family(path, max_vectors: int = DEFAULT_MAX_VECTORS) -> Family:
    with open(path, encoding="utf-8") as fh:
        return loads_family(fh.read(), max_vectors=max_vectors)


def write_family(family: Family, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_family(family))
