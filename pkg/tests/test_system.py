from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import (
    EmptySystem,
    InvalidProbability,
    LabelLengthMismatch,
    OutOfRangeState,
    OutOfRangeSuccessor,
    SchemaError,
)
from src.core.system import (
    INFINITE,
    analyze,
    build_system,
    dynamical_matrix,
    export_dot,
    fixed_points,
    iterate,
    load_system,
    predecessors,
    system_to_document,
)

successor_lists = st.integers(min_value=1, max_value=8).flatmap(
    lambda m: st.lists(st.integers(min_value=0, max_value=m - 1), min_size=m, max_size=m)
)


def test_build_rejects_bad_input():
    with pytest.raises(EmptySystem):
        build_system([])
    with pytest.raises(OutOfRangeSuccessor):
        build_system([1, 3, 0])
    with pytest.raises(LabelLengthMismatch):
        build_system([0, 1], ["only-one"])


def test_load_system_document():
    sys = load_system('{"states": 3, "phi": [1, 0, 2], "names": ["x", "y", "z"]}')
    assert sys.successor == (1, 0, 2)
    assert sys.name(2) == "z"
    assert system_to_document(sys) == {"states": 3, "phi": [1, 0, 2], "names": ["x", "y", "z"]}


@pytest.mark.parametrize("doc", [
    "not json",
    '{"successor": [0]}',
    '{"phi": [0, "1"]}',
    '{"states": 4, "phi": [0, 1]}',
    '{"phi": [0], "names": "a"}',
])
def test_load_system_schema_errors(doc):
    with pytest.raises(SchemaError):
        load_system(doc)


def test_iterate(sys_a, sys_c):
    assert iterate(sys_a, 0, 2) == 0
    assert iterate(sys_c, 6, 1) == 0
    assert iterate(sys_c, 6, 5) == 0
    assert iterate(sys_c, 6, 10**18) == 3
    with pytest.raises(OutOfRangeState):
        iterate(sys_c, 7, 1)


def test_predecessors_and_fixed_points(sys_a, chain):
    assert predecessors(chain, 3) == (2, 3, 4)
    assert predecessors(chain, 0) == ()
    assert fixed_points(sys_a) == (2,)
    assert fixed_points(build_system([1, 2, 0])) == ()
    assert fixed_points(build_system([0, 1])) == (0, 1)


def test_analyze_sys_a(sys_a):
    table = analyze(sys_a)
    assert table.length == (2, 2, 1)
    assert table.progeny == (0, 0, 0)
    assert table.ancestry == (INFINITE, INFINITE, INFINITE)
    assert table.attractors == ((0, 1), (2,))


def test_analyze_sys_c(sys_c):
    table = analyze(sys_c)
    assert table.attractors == ((0, 1, 2, 3), (4, 5))
    assert table.basin_id == (0, 0, 0, 0, 1, 1, 0)
    assert table.basin_sizes == (5, 2)
    assert (table.length[6], table.progeny[6], table.ancestry[6]) == (4, 1, 0)
    assert (table.length[0], table.progeny[0], table.ancestry[0]) == (4, 0, INFINITE)
    assert table.row(0)['ancestry'] == "inf"


def test_analyze_chain(chain):
    table = analyze(chain)
    assert table.progeny == (3, 2, 1, 0, 1)
    assert table.ancestry == (0, 1, 2, INFINITE, 0)


def test_infinite_ordering():
    assert INFINITE > 10**9
    assert not INFINITE < 0
    assert max([3, INFINITE, 5]) is INFINITE
    assert INFINITE >= INFINITE


def test_dynamical_matrix(sys_a, sys_c):
    one, zero = Fraction(1), Fraction(0)
    assert dynamical_matrix(sys_a).tolist() == [[zero, one, zero], [one, zero, zero], [zero, zero, one]]
    assert dynamical_matrix(build_system([0])).tolist() == [[one]]
    column = dynamical_matrix(sys_c)[:, 6].tolist()
    assert column == [one] + [zero] * 6


def test_export_dot(sys_a):
    dot = export_dot(sys_a)
    assert "digraph" in dot
    for edge in ("0 -> 1", "1 -> 0", "2 -> 2"):
        assert edge in dot
    assert "0 -> 0" in export_dot(build_system([0]))


def test_export_dot_labels(sys_a):
    dot = export_dot(sys_a, [Fraction(1, 2), Fraction(1, 2), Fraction(0)])
    assert dot.count("1/2") == 2
    assert "gray65" in dot
    assert "gray100" in dot
    with pytest.raises(LabelLengthMismatch):
        export_dot(sys_a, [Fraction(1)])


@given(successor_lists)
def test_feature_table_properties(successor):
    sys = build_system(successor)
    table = analyze(sys)
    assert sum(table.basin_sizes) == sys.num_states
    for s in range(sys.num_states):
        d = table.progeny[s]
        landing = iterate(sys, s, d)
        assert table.is_attractor_state(landing)
        assert table.basin_id[landing] == table.basin_id[s]
        assert table.length[s] == len(table.attractors[table.basin_id[s]])
        if d > 0:
            assert not table.is_attractor_state(iterate(sys, s, d - 1))
            assert table.ancestry[sys.phi(s)] > table.ancestry[s]


@given(successor_lists, st.integers(min_value=0, max_value=40))
def test_iterate_matches_stepping(successor, n):
    sys = build_system(successor)
    for s in range(sys.num_states):
        t = s
        for _ in range(n):
            t = sys.phi(t)
        assert iterate(sys, s, n) == t


@given(successor_lists)
def test_ancestry_is_longest_backward_chain(successor):
    sys = build_system(successor)
    table = analyze(sys)
    m = sys.num_states
    for s in range(m):
        a = table.ancestry[s]
        if a is INFINITE:
            assert any(iterate(sys, t, m) == s for t in range(m))
            continue
        assert any(iterate(sys, t, a) == s for t in range(m))
        assert not any(iterate(sys, t, a + 1) == s for t in range(m))


def test_export_dot_rejects_non_probability_labels(sys_a):
    with pytest.raises(InvalidProbability):
        export_dot(sys_a, [Fraction(3, 2), Fraction(-1, 2), Fraction(0)])
    with pytest.raises(InvalidProbability):
        export_dot(sys_a, ["1/3", "1/3", "1/4"])
    dot = export_dot(sys_a, ["1", "0", "0"])
    assert "gray30" in dot
    assert "gray-" not in dot
