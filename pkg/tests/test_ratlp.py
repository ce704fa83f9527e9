from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from src.core.errors import DimensionMismatch
from src.core.ratlp import LpProblem, LpStatus, solve


def _satisfies(problem: LpProblem, x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(
        sum((problem.A[i, j] * x[j] for j in range(problem.num_vars)), Fraction(0)) == problem.b[i]
        for i in range(problem.num_rows)
    )


def test_simple_optimum():
    outcome = solve(LpProblem.from_rows([[1, 1]], [1], [1, 0]))
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.assignment == (Fraction(1), Fraction(0))
    assert outcome.value == 1


def test_sign_obstruction_is_infeasible():
    outcome = solve(LpProblem.from_rows([[1, 1]], [-1], [1, 0]))
    assert outcome.status is LpStatus.INFEASIBLE
    assert outcome.certificate == 1
    assert not outcome.is_optimal


def test_no_constraints_is_unbounded():
    outcome = solve(LpProblem.from_rows([], [], [1], num_vars=1))
    assert outcome.status is LpStatus.UNBOUNDED


def test_feasibility_only():
    problem = LpProblem.from_rows([[1, 2, 0], [0, 1, 1]], [Fraction(3, 2), Fraction(1, 3)])
    outcome = solve(problem)
    assert outcome.is_optimal
    assert outcome.value == 0
    assert _satisfies(problem, outcome.assignment)


def test_redundant_and_zero_rows():
    problem = LpProblem.from_rows(
        [[1, 1, 0], [2, 2, 0], [0, 0, 0], [0, 1, 1]],
        [1, 2, 0, 1],
        [1, 0, 1],
    )
    outcome = solve(problem)
    assert outcome.is_optimal
    assert outcome.value == 2
    assert _satisfies(problem, outcome.assignment)


def test_zero_row_with_nonzero_rhs():
    outcome = solve(LpProblem.from_rows([[0, 0]], [Fraction(1, 3)]))
    assert outcome.status is LpStatus.INFEASIBLE
    assert outcome.certificate == Fraction(1, 3)


def test_degenerate_cycling_instance():
    # 经典的退化例子：不加反循环规则时会循环
    problem = LpProblem.from_rows(
        [
            [1, 0, 0, Fraction(1, 4), -60, -Fraction(1, 25), 9],
            [0, 1, 0, Fraction(1, 2), -90, -Fraction(1, 50), 3],
            [0, 0, 1, 0, 0, 1, 0],
        ],
        [0, 0, 1],
        [0, 0, 0, Fraction(3, 4), -150, Fraction(1, 50), -6],
    )
    outcome = solve(problem)
    assert outcome.is_optimal
    assert outcome.value == Fraction(1, 20)
    assert _satisfies(problem, outcome.assignment)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        LpProblem.from_rows([[1, 2], [1]], [1, 1])
    with pytest.raises(DimensionMismatch):
        LpProblem.from_rows([[1, 2]], [1], [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        LpProblem.from_rows([], [])


def test_debug_output(capsys):
    solve(LpProblem.from_rows([[1, 1]], [1], [1, 0]), debug_level=1)
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "x0" in captured.err


@pytest.mark.parametrize("seed", range(25))
def test_agrees_with_floating_point_solver(seed):
    rng = np.random.default_rng(seed)
    rows, cols = int(rng.integers(1, 4)), int(rng.integers(2, 6))
    A = rng.integers(-3, 4, size=(rows, cols))
    b = rng.integers(-4, 5, size=rows)
    c = rng.integers(-3, 4, size=cols)
    # 加一行 Σx + slack = 10 保证有界
    A = np.vstack([np.hstack([A, np.zeros((rows, 1), dtype=int)]), np.ones((1, cols + 1), dtype=int)])
    b = np.append(b, 10)
    c = np.append(c, 0)

    outcome = solve(LpProblem.from_rows(A.tolist(), b.tolist(), c.tolist()))
    reference = linprog(-c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")

    if reference.status == 2:
        assert outcome.status is LpStatus.INFEASIBLE
    else:
        assert reference.status == 0
        assert outcome.is_optimal
        assert float(outcome.value) == pytest.approx(-reference.fun, abs=1e-7)
