import random
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from adhocqos.lp import LpError, solve_covering_lp


def scipy_value(columns, demand):
    A = np.zeros((len(demand), len(columns)))
    for j, col in enumerate(columns):
        for v in col:
            A[v, j] = 1
    res = linprog(np.ones(len(columns)), A_ub=-A, b_ub=-np.array(demand, dtype=float), bounds=(0, None))
    assert res.status == 0
    return res.fun


def check_certificate(columns, demand, sol):
    got = [F(0)] * len(demand)
    for col, w in zip(columns, sol.weights):
        assert w >= 0
        for v in col:
            got[v] += w
    assert all(g >= t for g, t in zip(got, demand))
    assert sum(sol.weights) == sol.value


def test_singletons():
    demand = [F(1, 2), F(3), F(0)]
    sol = solve_covering_lp([frozenset({0}), frozenset({1}), frozenset({2})], demand)
    assert sol.value == F(7, 2)


def test_one_column_covers_all():
    sol = solve_covering_lp([frozenset({0, 1, 2})], [F(1), F(2, 3), F(5, 4)])
    assert sol.value == F(5, 4)


def test_empty_demand():
    assert solve_covering_lp([], []).value == 0


def test_uncoverable_row():
    with pytest.raises(LpError):
        solve_covering_lp([frozenset({0})], [F(1), F(1)])


def test_negative_demand():
    with pytest.raises(ValueError):
        solve_covering_lp([frozenset({0})], [F(-1)])


def test_degenerate_all_zero():
    cols = [frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})]
    sol = solve_covering_lp(cols, [F(0)] * 3)
    assert sol.value == 0 and not any(sol.weights)


@pytest.mark.parametrize("seed", range(40))
def test_random_against_scipy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    columns = {frozenset({v}) for v in range(n)}
    for _ in range(rng.randint(0, 25)):
        columns.add(frozenset(v for v in range(n) if rng.random() < 0.4))
    columns = sorted((c for c in columns if c), key=sorted)
    demand = [F(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(n)]
    sol = solve_covering_lp(columns, demand)
    check_certificate(columns, demand, sol)
    assert float(sol.value) == pytest.approx(scipy_value(columns, demand), abs=1e-9)
