import json

import pytest

from krlab_partitions import (
    THEOREM_VARIANTS,
    CountTable,
    Partition,
    PartitionError,
    UnknownVariant,
    VariantId,
    count_distinct_odd,
    enumerate_congruence,
    enumerate_variant,
    iter_members,
    members_by_weight,
    parse_variant,
    satisfies,
    violation,
)


@pytest.fixture(scope="module")
def kr1_table():
    return enumerate_variant("kr1", 20)


def test_kr1_nine_has_seven_members(kr1_table):
    assert kr1_table.total(9) == 7
    assert kr1_table.row(9) == {1: 1, 2: 4, 3: 2}


def test_kr1_nine_lists_the_seven():
    got = {str(p) for p in members_by_weight("kr1", 9)[9]}
    assert got == {"9", "1+8", "2+7", "3+6", "4+5", "1+2+6", "1+3+5"}


def test_congruence_side_nine_is_seven():
    t = enumerate_congruence(9, [1, 3, 6, 8], 9)
    assert t.total(9) == 7


def test_empty_partition_only_at_zero():
    t = enumerate_variant("kr1", 0)
    assert t.rows() == [(0, 0, 1)]
    assert t.to_csv() == "n,m,count\n0,0,1\n"


def test_count_table_json_shape(kr1_table):
    obj = json.loads(kr1_table.restrict(3).to_json())
    assert obj["variant"] == "kr1"
    assert obj["max_n"] == 3
    assert obj["entries"][0] == [0, 0, 1]


def test_count_table_rejects_int64_overflow():
    with pytest.raises(OverflowError):
        CountTable("big", 1, {(1, 1): 2**63})


@pytest.mark.parametrize("name", ["kr3-1", "kr3_1", "KR31", "kr31"])
def test_aliases(name):
    assert parse_variant(name) is VariantId.KR3_1


def test_unknown_variant():
    with pytest.raises(UnknownVariant):
        parse_variant("kr7")


def test_thirteen_theorem_variants():
    assert len(THEOREM_VARIANTS) == 13
    assert not any(v.is_congruence for v in THEOREM_VARIANTS)


@pytest.mark.parametrize(
    "literal,index",
    [("3,2", 1), ("1,x", 1), ("0,1", 0), ("1,2,-4", 2)],
)
def test_bad_literals_report_index(literal, index):
    with pytest.raises(PartitionError) as ei:
        Partition.parse(literal)
    assert ei.value.index == index


def test_parse_and_format():
    p = Partition.parse("1, 6,7,9,11,14,14")
    assert p.weight == 62
    assert p.length == 7
    assert str(p) == "1+6+7+9+11+14+14"
    assert str(Partition()) == "∅"


@pytest.mark.parametrize(
    "variant,literal,ok",
    [
        ("kr1", "4,5", True),
        ("kr1", "2,3", False),  # close pair summing to 5
        ("kr1", "2,3,4", False),  # distance-2 gap 2
        ("kr2", "1,8", False),
        ("kr3-1", "3,5,7,8", True),
        ("kr3-1", "3,3", False),
        ("krb4-2", "1,3,5,6", True),
        ("krb1-1", "2,2", False),
        ("kr5", "1,1", False),
        ("kr5", "1,2,4,6,6,7,9,11,11,13,15,15,16", True),
        ("krc1-2", "1,1,2", True),  # 1+1+2 = 4 ≡ 1
        ("kr6", "2,2,3", False),
        ("cong1", "1,3,6,8,10", True),
        ("cong1", "2", False),
    ],
)
def test_predicates(variant, literal, ok):
    p = Partition.parse(literal)
    assert satisfies(variant, p) is ok
    assert (violation(variant, p) is None) is ok


def test_members_are_members():
    for v in ("kr3-1", "krc2-2"):
        for p in iter_members(v, 16):
            assert satisfies(v, p), p


def test_mod12_members_never_repeat_a_part_four_times():
    for v in ("kr5", "kr6", "krc1-2", "krc2-2", "krc2-1"):
        for p in iter_members(v, 18):
            assert all(p.parts.count(a) <= 3 for a in set(p.parts))


@pytest.mark.parametrize("variant", [v.value for v in THEOREM_VARIANTS])
def test_enumeration_agrees_with_predicate_brute_force(variant):
    # every partition of n <= 10 filtered by the predicate
    def all_partitions(n, lo=1):
        if n == 0:
            yield ()
            return
        for a in range(lo, n + 1):
            for rest in all_partitions(n - a, a):
                yield (a,) + rest

    t = enumerate_variant(variant, 10)
    for n in range(11):
        want = sum(1 for parts in all_partitions(n) if satisfies(variant, Partition(parts)))
        assert t.total(n) == want, (variant, n)


def test_count_distinct_odd_small():
    grid = count_distinct_odd(2, 6)
    # partitions of 4 into <= 2 parts, no odd part repeated: 4, 3+1, 2+2
    assert grid[4][2] == 3
    # partitions of 2 into <= 1 part: 2
    assert grid[2][1] == 1
    assert grid[0][0] == 1


@pytest.mark.parametrize("variant", [v.value for v in THEOREM_VARIANTS])
def test_deeper_enumeration_restricts_to_shallower(variant):
    deep = enumerate_variant(variant, 20).restrict(12)
    shallow = enumerate_variant(variant, 12)
    assert deep.max_n == shallow.max_n == 12
    assert deep.entries == shallow.entries
