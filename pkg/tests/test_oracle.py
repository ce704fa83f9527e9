import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.deterministic import DetMap
from src.core.errors import OutOfRangeState, SearchSpaceTooLarge
from src.core.oracle import (
    MapEnumerator,
    enumerate_covariant,
    oracle_conversion_pairs,
    oracle_convertible,
    oracle_fixed_points,
)
from src.core.system import analyze, build_system, iterate


def test_map_enumerator():
    enumerator = MapEnumerator(3, 2)
    assert len(enumerator) == 8
    tables = list(enumerator)
    assert len(tables) == 8
    assert tables[0] == (0, 0, 0)
    assert tables[-1] == (1, 1, 1)


def test_single_state():
    one = build_system([0])
    assert [f.table for f in enumerate_covariant(one, one)] == [(0,)]


def test_no_maps_between_coprime_cycles():
    assert list(enumerate_covariant(build_system([1, 2, 0]), build_system([1, 0]))) == []


def test_self_maps_of_sys_a(sys_a):
    maps = list(enumerate_covariant(sys_a, sys_a))
    assert DetMap.identity(sys_a) in maps
    assert DetMap(sys_a, sys_a, (2, 2, 2)) in maps
    assert DetMap(sys_a, sys_a, (1, 0, 2)) in maps
    assert DetMap(sys_a, sys_a, (2, 0, 2)) not in maps


def test_oracle_convertible(sys_a):
    assert not oracle_convertible(sys_a, 2, 0)
    assert oracle_convertible(sys_a, 0, 1)
    assert oracle_convertible(sys_a, 0, 2)
    with pytest.raises(OutOfRangeState):
        oracle_convertible(sys_a, 0, 5)


def test_oracle_fixed_points(sys_a):
    assert oracle_fixed_points(sys_a) == {2}
    assert oracle_fixed_points(build_system([1, 2, 0])) == frozenset()
    assert oracle_fixed_points(build_system([0, 1])) == {0, 1}


def test_conversion_pairs(sys_a):
    pairs = oracle_conversion_pairs(sys_a, sys_a)
    assert (2, 0) not in pairs
    assert {(0, 0), (0, 1), (0, 2), (2, 2)} <= pairs


def test_search_space_cap(sys_c):
    with pytest.raises(SearchSpaceTooLarge) as info:
        enumerate_covariant(sys_c, sys_c, max_maps=100)
    assert info.value.size == 7**7


small_systems = st.integers(min_value=1, max_value=4).flatmap(
    lambda m: st.lists(st.integers(min_value=0, max_value=m - 1), min_size=m, max_size=m)
)


@settings(max_examples=40, deadline=None)
@given(small_systems)
def test_covariant_maps_form_a_monoid_with_the_dynamics(successor):
    sys = build_system(successor)
    m = sys.num_states
    tables = {f.table for f in enumerate_covariant(sys, sys)}
    for n in range(2 * m + 1):
        assert tuple(iterate(sys, s, n) for s in range(m)) in tables
    for f in tables:
        for g in tables:
            assert tuple(g[f[s]] for s in range(m)) in tables


@settings(max_examples=60, deadline=None)
@given(small_systems, small_systems)
def test_covariant_maps_respect_monotones(first, second):
    sys1, sys2 = build_system(first), build_system(second)
    table1, table2 = analyze(sys1), analyze(sys2)
    m = sys1.num_states
    for f in enumerate_covariant(sys1, sys2):
        for s in range(m):
            t = f(s)
            assert table2.progeny[t] <= table1.progeny[s]
            assert table1.length[s] % table2.length[t] == 0
            for n in range(m + 1):
                assert table2.ancestry[iterate(sys2, t, n)] >= table1.ancestry[iterate(sys1, s, n)]
            for n in range(2 * m + 1):
                assert iterate(sys2, t, n) == f(iterate(sys1, s, n))
