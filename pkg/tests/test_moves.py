import functools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import cocycle, structure
from singquandle import fixtures
from singquandle.cocycle import CocyclePair, build_cocycle_system, verify_cocycle_pair
from singquandle.coloring import enumerate_colorings
from singquandle.diagram import Classical, isomorphic, unknot, validate_diagram
from singquandle.fixtures import FIXTURE_NAMES, fixture
from singquandle.invariant import state_sum
from singquandle.moves import MoveRejectedError, MoveSpec, apply_move, random_move_walk
from singquandle.zmod import solve_mod


@functools.lru_cache(maxsize=None)
def item4_completed():
    """The reference item4 phi with a phiprime that satisfies every condition."""
    s, p = structure("item4"), cocycle("item4")
    nn = s.n * s.n
    A = build_cocycle_system(s, p.m).coefficients
    phi = np.array(p.to_vector()[:nn])
    sol = solve_mod(A[:, nn:], (-A[:, :nn] @ phi) % p.m, p.m)
    return CocyclePair.from_vector(s.n, p.m, list(phi) + list(sol.particular))


def test_completed_item4_pair_verifies():
    assert verify_cocycle_pair(structure("item4"), item4_completed()).ok


def test_r1_insert_on_5k8():
    d = fixture("5k8")
    s, p = structure("item1"), cocycle("item1")
    for arc in range(d.n_arcs):
        for sign in (1, -1):
            out = apply_move(d, MoveSpec("R1_insert", (arc,), sign))
            assert len(out.classical) == 6 and len(out.singular) == 1
            assert state_sum(out, s, p).coeffs == (6, 0, 0, 0, 0, 0)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
@pytest.mark.parametrize("over_first", [False, True])
def test_r1_insert_then_delete(name, over_first):
    d = fixture(name)
    for arc in range(d.n_arcs):
        out = apply_move(d, MoveSpec("R1_insert", (arc,), 1, over_first))
        assert out.component_count() == d.component_count()
        back = apply_move(out, MoveSpec("R1_delete", (len(out.crossings) - 1,)))
        assert isomorphic(back, d)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_r2_insert_then_delete(name):
    d = fixture(name)
    for over in range(d.n_arcs):
        under = (over + 1) % d.n_arcs
        out = apply_move(d, MoveSpec("R2_insert", (over, under), -1))
        assert len(out.crossings) == len(d.crossings) + 2
        k = len(out.crossings)
        back = apply_move(out, MoveSpec("R2_delete", (k - 2, k - 1)))
        assert isomorphic(back, d)


def test_r1_on_unknot():
    out = apply_move(unknot(), MoveSpec("R1_insert", (0,)))
    assert out.crossings == (Classical(1, 0, 0, 0),)
    assert out.loops == ()
    back = apply_move(out, MoveSpec("R1_delete", (0,)))
    assert isomorphic(back, unknot())


def test_r2_over_a_loop():
    from singquandle.diagram import parse_diagram

    d = parse_diagram("O 0\nO 1")
    out = apply_move(d, MoveSpec("R2_insert", (0, 1)))
    assert validate_diagram(out).components == 2
    assert isomorphic(apply_move(out, MoveSpec("R2_delete", (0, 1))), d)


def test_rejections():
    d = fixture("5k1")
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R2_insert", (1, 1)))
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R1_insert", (99,)))
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R1_delete", (0,)))
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R2_delete", (1, 2)))
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R3", (0,)))
    with pytest.raises(MoveRejectedError):
        apply_move(d, MoveSpec("R1_insert", (0,), 2))


def test_walk_zero_steps():
    d = fixture("K3")
    assert random_move_walk(d, 5, 0) == d


def test_walk_is_deterministic():
    d = fixture("granny")
    assert random_move_walk(d, 3, 15) == random_move_walk(d, 3, 15)


def test_walk_rejects_negative_steps():
    with pytest.raises(ValueError):
        random_move_walk(fixture("K1"), 0, -1)


def test_granny_walk_keeps_value():
    walked = random_move_walk(fixture("granny"), 1, 10)
    assert validate_diagram(walked).valid
    value = state_sum(walked, structure("item4"), cocycle("item4"), force=True)
    assert value.coeffs == (370, 250, 130, 250)


def test_k1_walk_keeps_count():
    walked = random_move_walk(fixture("K1"), 7, 20)
    assert len(enumerate_colorings(walked, structure("item2"))) == 6
    assert walked.component_count() == 3


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIXTURE_NAMES), st.sampled_from(["item1", "item2", "item3", "item4*"]),
       st.integers(0, 10 ** 6), st.integers(1, 20))
def test_walk_preserves_invariant(name, item, seed, steps):
    s = structure(item.rstrip("*"))
    p = item4_completed() if item == "item4*" else cocycle(item)
    d = fixture(name)
    walked = random_move_walk(d, seed, steps)
    assert validate_diagram(walked).components == d.component_count()
    before, after = state_sum(d, s, p), state_sum(walked, s, p)
    assert before == after
