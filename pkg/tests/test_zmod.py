from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_solutions
from singquandle.zmod import kernel_mod, solve_mod


@st.composite
def systems(draw):
    m = draw(st.sampled_from([2, 3, 4, 6, 8, 9, 12]))
    rows = draw(st.integers(0, 4))
    cols = draw(st.integers(1, 3))
    A = draw(st.lists(st.lists(st.integers(0, m - 1), min_size=cols, max_size=cols),
                      min_size=rows, max_size=rows))
    b = draw(st.lists(st.integers(0, m - 1), min_size=rows, max_size=rows))
    return np.array(A, dtype=np.int64).reshape(rows, cols), np.array(b, dtype=np.int64), m


@settings(max_examples=200, deadline=None)
@given(systems())
def test_solve_mod_matches_brute_force(system):
    A, b, m = system
    sol = solve_mod(A, b, m)
    expected = brute_solutions(A.tolist(), b.tolist(), m, A.shape[1])
    assert sol.count == len(expected)
    assert sorted(sol.iter_solutions()) == sorted(expected)


@settings(max_examples=100, deadline=None)
@given(systems())
def test_kernel_is_closed_under_combination(system):
    A, _, m = system
    sol = kernel_mod(A, m, A.shape[1])
    gens = [np.array(g) for g in sol.generators]
    for g, order in zip(gens, sol.orders):
        assert not ((A @ g) % m).any()
        assert not ((order * g) % m).any()
    if gens:
        combo = sum((k + 1) * g for k, g in enumerate(gens)) % m
        assert not ((A @ combo) % m).any()


def test_zero_rows_give_full_space():
    sol = solve_mod(np.zeros((0, 3), dtype=np.int64), np.zeros(0, dtype=np.int64), 5)
    assert sol.count == 125


def test_inconsistent_system():
    # 2x = 1 has no solution mod 4
    sol = solve_mod(np.array([[2]]), np.array([1]), 4)
    assert not sol.consistent
    assert sol.count == 0
    assert list(sol.iter_solutions()) == []


def test_zero_divisor_system():
    # 2x = 2 mod 4 has the two solutions 1 and 3
    sol = solve_mod(np.array([[2]]), np.array([2]), 4)
    assert sorted(sol.iter_solutions()) == [(1,), (3,)]


def test_modulus_one():
    sol = solve_mod(np.array([[1, 1]]), np.array([0]), 1)
    assert sol.count == 1


def test_iteration_limit():
    sol = solve_mod(np.zeros((0, 4), dtype=np.int64), np.zeros(0, dtype=np.int64), 10)
    with pytest.raises(OverflowError):
        list(sol.iter_solutions(limit=100))


def test_many_rows_composite_modulus():
    rng = np.random.default_rng(3)
    m = 12
    x = rng.integers(0, m, size=4)
    A = rng.integers(0, m, size=(40, 4))
    b = (A @ x) % m
    sol = solve_mod(A, b, m)
    assert tuple(int(v) for v in x) in set(sol.iter_solutions())
    assert sol.count == len(brute_solutions(A.tolist(), b.tolist(), m))


def test_every_system_with_one_unknown_mod_6():
    for a, c in product(range(6), repeat=2):
        sol = solve_mod(np.array([[a]]), np.array([c]), 6)
        assert sorted(sol.iter_solutions()) == [(x,) for x in range(6) if (a * x - c) % 6 == 0]
