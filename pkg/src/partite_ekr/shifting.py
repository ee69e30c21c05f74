"""(1 <- j)-shifts on partite families and the non-triviality-preserving closure."""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import fixed_coordinates, is_nontrivial_intersecting_family
from .constructions import not_shifted_bound, resistant_count_bound
from .model import Family, FamilyError


class InternalConsistencyError(RuntimeError):
    """A structural guarantee of the shifting lemmas failed to hold."""


@dataclass(frozen=True)
class ShiftOutcome:
    family: Family
    moved_count: int
    blocked_count: int


@dataclass(frozen=True)
class ResistanceReport:
    resistant_parts: dict[int, int]  # part -> the symbol whose shift would trivialize
    shifted_parts: frozenset[int]

    def __post_init__(self) -> None:
        if set(self.resistant_parts) & self.shifted_parts:
            raise InternalConsistencyError("a part cannot be both shifted and shift-resistant")

    @property
    def b(self) -> int:
        return len(self.resistant_parts)


def _check_part(family: Family, part: int) -> None:
    if not 1 <= part <= family.r:
        raise FamilyError(f"part {part} outside 1..{family.r}")


def apply_shift(family: Family, part: int, symbol: int) -> ShiftOutcome:
    """Move coordinate ``part`` from ``symbol`` to 1 wherever the image is not
    already an edge."""
    _check_part(family, part)
    n = family.spec.sizes[part - 1]
    if not 2 <= symbol <= n:
        raise FamilyError(f"shift symbol {symbol} outside 2..{n} for part {part}")
    p = part - 1
    out = []
    moved = blocked = 0
    for e in family:
        if e[p] == symbol:
            image = e[:p] + (1,) + e[p + 1:]
            if image in family:
                blocked += 1
                out.append(e)
            else:
                moved += 1
                out.append(image)
        else:
            out.append(e)
    return ShiftOutcome(family.with_edges(out), moved, blocked)


def is_part_shifted(family: Family, part: int) -> bool:
    _check_part(family, part)
    p = part - 1
    return all(e[p] == 1 or (e[:p] + (1,) + e[p + 1:]) in family for e in family)


def is_coordinatewise_shifted(family: Family) -> bool:
    return all(is_part_shifted(family, ell) for ell in range(1, family.r + 1))


def _is_trivial(family: Family, t: int) -> bool:
    fixed = fixed_coordinates(family)
    return fixed is None or len(fixed) >= t


def _require_nontrivial(family: Family, t: int) -> None:
    if not is_nontrivial_intersecting_family(family, t):
        raise FamilyError(f"family is not a non-trivial {t}-intersecting family")


def _resistance(family: Family, t: int, part: int) -> int | None:
    hits = [
        x for x in range(2, family.spec.sizes[part - 1] + 1)
        if _is_trivial(apply_shift(family, part, x).family, t)
    ]
    if len(hits) > 1:
        raise InternalConsistencyError(
            f"part {part}: shifts at symbols {hits} all trivialize the family"
        )
    return hits[0] if hits else None


def detect_shift_resistance(family: Family, t: int, part: int) -> int | None:
    """The symbol ``x`` whose shift at ``part`` makes the family trivial, if any."""
    _check_part(family, part)
    _require_nontrivial(family, t)
    return _resistance(family, t, part)


def shift_closure_preserving_nontriviality(family: Family, t: int) -> tuple[Family, ResistanceReport]:
    """Apply shifts round-robin (parts 1..r, symbols 2..n) skipping any shift that
    would trivialize the family, until a full pass changes nothing."""
    _require_nontrivial(family, t)
    current = family
    changed = True
    while changed:
        changed = False
        for part in range(1, current.r + 1):
            for j in range(2, current.spec.sizes[part - 1] + 1):
                out = apply_shift(current, part, j)
                if not out.moved_count:
                    continue
                if _is_trivial(out.family, t):
                    continue
                current = out.family
                changed = True
    return current, classify_parts(current, t)


def classify_parts(family: Family, t: int) -> ResistanceReport:
    resistant: dict[int, int] = {}
    shifted = set()
    for part in range(1, family.r + 1):
        if is_part_shifted(family, part):
            shifted.add(part)
            continue
        x = _resistance(family, t, part)
        if x is None:
            raise InternalConsistencyError(f"part {part} is neither shifted nor shift-resistant")
        resistant[part] = x
    return ResistanceReport(resistant, frozenset(shifted))


@dataclass
class StructureCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class StructureReport:
    t: int
    resistance: ResistanceReport
    checks: list[StructureCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(StructureCheck(name, bool(passed), detail))


def verify_structure_lemmas(family: Family, t: int) -> StructureReport:
    """Check the structure forced at a shifted/resistant fixpoint.

    For each resistant part ``l`` with witness ``x``: exactly ``t - 1`` fixed
    coordinates, only symbols 1 and ``x`` occur at ``l`` (both do), and no edge
    with symbol ``x`` at ``l`` stays put under the shift.  For a family that is
    not coordinate-wise shifted with equal part sizes, the two counting bounds
    are checked as well.
    """
    if not 1 <= t <= family.r - 2:
        raise FamilyError(f"t={t} outside 1..r-2")
    _require_nontrivial(family, t)
    resistance = classify_parts(family, t)
    report = StructureReport(t, resistance)
    fixed = fixed_coordinates(family)
    for part, x in sorted(resistance.resistant_parts.items()):
        p = part - 1
        report.add(f"part {part}: |fixed coords| = t-1", len(fixed) == t - 1, f"{len(fixed)}")
        symbols = {e[p] for e in family}
        report.add(f"part {part}: only symbols 1 and {x}", symbols <= {1, x}, f"{sorted(symbols)}")
        report.add(f"part {part}: symbol 1 occurs", 1 in symbols)
        report.add(f"part {part}: symbol {x} occurs", x in symbols)
        stays = [e for e in family if e[p] == x and (e[:p] + (1,) + e[p + 1:]) in family]
        report.add(f"part {part}: every edge at symbol {x} moves", not stays, f"{stays[:3]}")
    if resistance.b and family.spec.is_uniform:
        n, r, b = family.spec.sizes[0], family.r, resistance.b
        report.add("at least two resistant parts", b >= 2, f"b={b}")
        bound_b = resistant_count_bound(b, t, n, r)
        report.add(f"|F| <= 2^(b-1) n^(r-b-t+1) = {bound_b}", len(family) <= bound_b, f"|F|={len(family)}")
        bound = not_shifted_bound(t, n, r)
        report.add(f"|F| <= (t+2)n^(r-t-1) - (t+1)n^(r-t-2) = {bound}", len(family) <= bound, f"|F|={len(family)}")
    return report
