import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from familygen import seeded
from partite_ekr.analysis import matching_number, transversal_number
from partite_ekr.constructions import construct_E, construct_W_r
from partite_ekr.model import Family, FamilyError, PartSpec
from partite_ekr.sunflower import (
    GroundedSetFamily,
    Sunflower,
    base_of_partite_family,
    compute_base,
    erdos_rado_check,
    find_sunflower,
    is_base_of,
    partite_to_sets,
    replay,
    set_matching_number,
    set_transversal_number,
    shrink,
    steps_from_jsonl,
)

WORKED = GroundedSetFamily.of([{1, 2}, {1, 3, 4}, {1, 3, 5}, {2, 3}, {3, 4, 5}])

WORKED_LOG = (
    '{"accepted": true, "core": [1], "nu_after": 2, "nu_before": 2, "op": "shrink", '
    '"replaced": [[1, 2], [1, 3, 4], [1, 3, 5]]}\n'
    '{"accepted": false, "core": [2], "nu_after": 3, "nu_before": 2, "op": "shrink", '
    '"replaced": [[2, 3]]}\n'
    '{"accepted": true, "core": [3], "nu_after": 2, "nu_before": 2, "op": "shrink", '
    '"replaced": [[2, 3], [3, 4, 5]]}\n'
)

small_sets = st.lists(st.frozensets(st.integers(1, 6), min_size=1, max_size=3), min_size=1, max_size=8)


def brute_set_nu(sets):
    sets = list(sets)
    best = 0
    for k in range(1, len(sets) + 1):
        if any(all(not (a & b) for a, b in itertools.combinations(c, 2)) for c in itertools.combinations(sets, k)):
            best = k
    return best


def test_worked_example_shrinks():
    f1 = shrink(WORKED, {1})
    assert json.dumps(f1.as_lists()) == "[[1], [2, 3], [3, 4, 5]]"
    assert set_matching_number(WORKED) == set_matching_number(f1) == 2
    f2 = shrink(f1, {3})
    assert json.dumps(f2.as_lists()) == "[[1], [3]]"
    rejected = shrink(f1, {4})
    assert json.dumps(rejected.as_lists()) == "[[1], [2, 3], [4]]"
    assert set_matching_number(rejected) == 3


def test_worked_example_base_and_log():
    base = compute_base(WORKED)
    assert json.dumps(base.family.as_lists()) == "[[1], [3]]"
    assert base.provenance_jsonl() == WORKED_LOG
    assert base.rho() == {1: 2}
    assert replay(WORKED, steps_from_jsonl(base.provenance_jsonl())) == base.family
    assert all(is_base_of(base.family, WORKED).values())


def test_shrink_errors():
    with pytest.raises(FamilyError):
        shrink(WORKED, set())
    with pytest.raises(FamilyError):
        shrink(WORKED, {6})
    with pytest.raises(FamilyError):
        shrink(WORKED, {1, 2})  # a member, not a proper subset of one


def test_matching_examples():
    assert set_matching_number(GroundedSetFamily.of([{1}, {2, 3}, {3, 4, 5}])) == 2
    assert set_matching_number(GroundedSetFamily.of([{i} for i in range(7)])) == 7


def test_antichain_base_is_fixpoint():
    f = GroundedSetFamily.of([{1, 2}, {2, 3}, {1, 3}])
    base = compute_base(f)
    assert base.family == f
    assert all(not step.accepted for step in base.provenance)


def test_sunflower_examples():
    star = GroundedSetFamily.of([{1, 2}, {1, 3}, {1, 4}])
    flower = find_sunflower(star, 3)
    assert flower.core == {1} and len(flower.petals) == 3
    triangle = GroundedSetFamily.of([{1, 2}, {2, 3}, {1, 3}])
    assert find_sunflower(triangle, 3) is None
    single = find_sunflower(triangle, 1)
    assert single.petals[0] == single.core
    with pytest.raises(FamilyError):
        find_sunflower(triangle, 0)


def test_sunflower_validation():
    with pytest.raises(FamilyError):
        Sunflower(frozenset({1}), (frozenset({1, 2}), frozenset({1, 2, 3})))


@given(small_sets, st.integers(2, 4))
def test_sunflower_finder_is_complete(sets, k):
    f = GroundedSetFamily.of(sets)
    found = find_sunflower(f, k)
    members = f.members()
    exists = any(
        all((a - frozenset.intersection(*c)).isdisjoint(b - frozenset.intersection(*c))
            for a, b in itertools.combinations(c, 2))
        for c in itertools.combinations(members, k)
    )
    assert (found is not None) == exists
    if found is not None:
        assert len(found.petals) == k and all(p in f.sets for p in found.petals)


def test_erdos_rado_examples():
    # nine 2-subsets of [5] exceed 2! * 2^2 = 8, so a 3-petal sunflower must exist
    pairs = [frozenset(p) for p in itertools.combinations(range(1, 6), 2)][:9]
    rep = erdos_rado_check(GroundedSetFamily.of(pairs), 3)
    assert rep.bound == 8 and rep.exceeds and rep.sunflower is not None
    small = erdos_rado_check(GroundedSetFamily.of(pairs[:4]), 3)
    assert not small.exceeds and small.sunflower is None
    one = erdos_rado_check(GroundedSetFamily.of(pairs[:1]), 1)
    assert one.bound == 0 and one.sunflower is not None


@given(small_sets)
def test_set_matching_and_cover(sets):
    f = GroundedSetFamily.of(sets)
    nu = set_matching_number(f)
    assert nu == brute_set_nu(f.sets)
    assert nu <= set_transversal_number(f)


@given(small_sets)
def test_base_properties(sets):
    f = GroundedSetFamily.of(sets)
    base = compute_base(f)
    assert all(is_base_of(base.family, f).values())
    assert replay(f, steps_from_jsonl(base.provenance_jsonl())) == base.family
    nu = set_matching_number(f)
    for step in base.provenance:
        if step.op == "shrink":
            assert step.accepted == (step.nu_after <= nu)
            assert step.accepted or step.nu_after > nu


def test_partite_conversion_tags_parts():
    f = Family(PartSpec((2, 2)), [(1, 1), (2, 1)])
    sets = partite_to_sets(f)
    assert len(sets.ground) == 4
    assert set_matching_number(sets) == matching_number(f)[0] == 1


def test_base_of_E_3_1_3():
    base = base_of_partite_family(construct_E(PartSpec.uniform(3, 3), 1), 1)
    assert all(base.checks.values())
    assert set_matching_number(base.family) == 1


def test_base_rejects_trivial_family():
    spec = PartSpec.uniform(3, 3)
    star = Family(spec, [v for v in spec.vectors() if v[0] == 1])
    with pytest.raises(FamilyError):
        base_of_partite_family(star, 1)


def test_base_of_W4():
    f = construct_W_r(PartSpec.uniform(4, 2))
    assert transversal_number(f)[0] == 2
    base = base_of_partite_family(f, 1)
    assert all(base.checks.values())
