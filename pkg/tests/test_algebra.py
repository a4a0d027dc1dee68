from itertools import permutations, product

import numpy as np
import pytest

from oracles import inverse_table, naive_singquandle_ok, structure
from singquandle import fixtures
from singquandle.algebra import (AffineConditionError, FiniteQuandle, FiniteSingquandle,
                                 InvalidSizeError, MalformedTableError, NonUnitError,
                                 NotAGroupError, NotAutomorphismError, affine_singquandle_tables,
                                 enumerate_affine_singquandles, first_violation,
                                 make_affine_singquandle, make_alexander_quandle,
                                 make_conjugation_quandle, make_dihedral_quandle,
                                 make_generalized_alexander, make_trivial_quandle,
                                 singquandle_from_json, singquandle_to_json, verify_quandle,
                                 verify_singquandle)


def s3_table():
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]


def z_table(n):
    return [[(x + y) % n for y in range(n)] for x in range(n)]


@pytest.mark.parametrize("q", [make_trivial_quandle(4), make_dihedral_quandle(5),
                               make_alexander_quandle(7, 3), make_dihedral_quandle(1)])
def test_standard_quandles_verify(q):
    assert verify_quandle(q).ok


def test_dihedral_values():
    q = make_dihedral_quandle(3)
    assert q.star[0][1] == 2
    assert q.starbar == q.star


def test_alexander_inverse():
    q = make_alexander_quandle(5, 2)
    for x, y in product(range(5), repeat=2):
        assert q.star[q.starbar[x][y]][y] == x


def test_conjugation_quandle_of_s3():
    q = make_conjugation_quandle(s3_table())
    assert verify_quandle(q).ok
    assert q.n == 6
    # the identity is fixed by conjugation
    e = 0
    assert all(q.star[e][y] == e for y in range(6))


def test_generalized_alexander_z4():
    q = make_generalized_alexander(z_table(4), [0, 3, 2, 1])
    assert verify_quandle(q).ok
    # x*y = f(x - y) + y = 3x - 2y
    assert all(q.star[x][y] == (3 * x - 2 * y) % 4 for x, y in product(range(4), repeat=2))


def test_generalized_alexander_rejects_non_automorphism():
    with pytest.raises(NotAutomorphismError):
        make_generalized_alexander(z_table(4), [0, 2, 0, 2])


def test_non_group_rejected():
    with pytest.raises(NotAGroupError):
        make_conjugation_quandle([[0, 0], [0, 0]])


def test_non_unit_alexander():
    with pytest.raises(NonUnitError):
        make_alexander_quandle(6, 2)


def test_invalid_sizes():
    with pytest.raises(InvalidSizeError):
        make_trivial_quandle(0)
    with pytest.raises(MalformedTableError):
        FiniteQuandle.from_star([[0, 1], [0]])
    with pytest.raises(MalformedTableError):
        FiniteQuandle.from_star([[0, 5], [0, 1]])


def test_projection_table_fails_right_invertibility():
    # star[x][y] = y: every x maps to the same color, so right multiplication is not a bijection
    report = verify_quandle(FiniteQuandle.from_star([[0, 1], [0, 1]]))
    assert report.counterexample("idempotence") is None
    assert report.counterexample("right-invertibility") == (0, 1, 0)
    assert not report.ok


def test_first_violation_is_lexicographic():
    holds = np.ones((3, 3, 3), dtype=bool)
    holds[2, 0, 0] = False
    holds[1, 2, 1] = False
    assert first_violation(holds) == (1, 2, 1)
    assert first_violation(np.ones((2, 2), dtype=bool)) is None


@pytest.mark.parametrize("name", list(fixtures.ITEMS))
def test_reference_tables_equal_affine_tables(name):
    it = fixtures.ITEMS[name]
    s = structure(name)
    assert s == affine_singquandle_tables(it.n, *it.affine)
    assert s.affine is not None


def test_item3_reference_inverse():
    s = structure("item3")
    assert all(s.starbar[x][y] == (-3 * x + 4 * y) % 10 for x, y in product(range(10), repeat=2))
    assert [list(r) for r in s.starbar] == inverse_table(10, s.star)


@pytest.mark.parametrize("name", list(fixtures.ITEMS))
def test_items_pass_naive_oracle(name):
    s = structure(name)
    assert naive_singquandle_ok(s.n, s.star, s.r1, s.r2)
    assert verify_singquandle(s).ok


@pytest.mark.parametrize("n", range(1, 9))
def test_affine_acceptance_matches_exhaustive_verification(n):
    accepted = set(enumerate_affine_singquandles(n))
    for a, b, c, d in product(range(n), repeat=4):
        try:
            make_affine_singquandle(n, a, b, c, d)
            built = True
        except (NonUnitError, AffineConditionError):
            built = False
        if np.gcd(a, n) != 1:
            assert not built
            continue
        ok = verify_singquandle(affine_singquandle_tables(n, a, b, c, d)).ok
        assert built == ok, (n, a, b, c, d)
        assert ((a, b, c, d) in accepted) == ok


@pytest.mark.parametrize("n", range(1, 5))
def test_affine_acceptance_matches_naive_oracle(n):
    for a, b, c, d in product(range(n), repeat=4):
        if np.gcd(a, n) != 1:
            continue
        s = affine_singquandle_tables(n, a, b, c, d)
        assert verify_singquandle(s).ok == naive_singquandle_ok(n, s.star, s.r1, s.r2)


def test_all_structures_on_two_elements():
    # every (star, r1, r2) on a 2-element set, against the naive oracle
    tables = [[[v[0], v[1]], [v[2], v[3]]] for v in product(range(2), repeat=4)]
    for star in tables:
        q = FiniteQuandle.from_star(star)
        for r1, r2 in product(tables, repeat=2):
            expected = naive_singquandle_ok(2, star, r1, r2)
            assert verify_singquandle(FiniteSingquandle(q, r1, r2)).ok == expected


def test_affine_family_example():
    # a=5, b=2, c=5 on Z_6 with constant 3: (1-a)(1-b-c) = -4*-6 = 24 = 0
    s = make_affine_singquandle(6, 5, 2, 5, 3)
    assert s.r2[1][0] == (5 * 5 * 1 + 3) % 6
    assert all(s.r2[x][y] == s.r1[y][s.star[x][y]] for x, y in product(range(6), repeat=2))


def test_affine_condition_error_carries_values():
    with pytest.raises(AffineConditionError) as info:
        make_affine_singquandle(6, 5, 2, 5, 2)
    assert info.value.value == 0
    assert info.value.constant_value == 4
    with pytest.raises(AffineConditionError):
        make_affine_singquandle(4, 3, 1, 1)


def test_constant_term_breaks_both_slides():
    report = verify_singquandle(affine_singquandle_tables(6, 5, 2, 5, 2))
    assert report.failures() == ["r1-slide", "r2-slide"]
    assert report.counterexample("r2-slide") == (0, 0, 0)


def test_trivial_singquandle():
    s = make_affine_singquandle(3, 1, 1, 0)
    assert all(s.star[x][y] == x for x, y in product(range(3), repeat=2))
    assert verify_singquandle(s).ok


def test_json_round_trip():
    s = structure("item2")
    data = singquandle_to_json(s)
    assert singquandle_from_json(data) == s
    plain = {k: v for k, v in data.items() if k != "affine"}
    assert singquandle_from_json(plain) == s


def test_json_rejects_bad_tables():
    with pytest.raises(MalformedTableError):
        singquandle_from_json({"n": 2, "star": [[0, 1]], "r1": [[0, 0], [1, 1]], "r2": [[0, 0], [1, 1]]})


def test_report_rendering():
    report = verify_singquandle(affine_singquandle_tables(6, 5, 2, 5, 2))
    text = str(report)
    assert "r2-slide: FAIL at (0, 0, 0)" in text
    assert "r2-from-r1: pass" in text
    assert not bool(report)
