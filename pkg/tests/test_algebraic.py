"""Sylvester matrices and the generator-column constructions."""

import itertools

import numpy as np
import pytest

from oaforge.algebraic import (
    GeneratorColumns,
    bush_columns,
    field_det,
    field_rank,
    linear_oa,
    projective_columns,
    q4_matrix,
    quad_coefficient,
    sylvester,
    sylvester_oa2,
    sylvester_oa3,
    verify_generator_columns,
)
from oaforge.arrays import verify_strength
from oaforge.errors import VerificationError
from oaforge.expand import check_resolvable_projection, expand_shift
from oaforge.gf import make_field


def test_sylvester_order2():
    assert np.array_equal(sylvester(1), np.array([[1, 1], [1, -1]]))


def test_sylvester_order4_matches_printed_matrix():
    expected = np.array(
        [[1, 1, 1, 1],
         [1, -1, 1, -1],
         [1, 1, -1, -1],
         [1, -1, -1, 1]]
    )
    assert np.array_equal(sylvester(2), expected)


@pytest.mark.parametrize("n", range(1, 9))
def test_sylvester_hadamard_property(n):
    s = sylvester(n).astype(np.int64)
    assert np.array_equal(s @ s.T, (1 << n) * np.eye(1 << n, dtype=np.int64))


def test_sylvester_range():
    with pytest.raises(ValueError):
        sylvester(0)
    with pytest.raises(ValueError):
        sylvester(11)


def test_sylvester_oa2_small():
    a, proj = sylvester_oa2(2, 3)
    # direct 4x4 evaluation: rows are the even-weight triplets
    rows = set(map(tuple, a.cells.tolist()))
    assert rows == {r for r in np.ndindex(2, 2, 2) if sum(r) % 2 == 0}
    assert proj.columns == (0, 1)
    assert verify_strength(a, 2).ok


def test_sylvester_oa2_expansion_count():
    a, proj = sylvester_oa2(3, 7)
    ls = expand_shift(a, proj)
    assert ls.m == 2 ** (7 - 3)
    a, proj = sylvester_oa2(4, 15)
    assert a.n == 16 and a.k == 15
    assert verify_strength(a, 2).ok


def test_sylvester_oa2_bounds():
    with pytest.raises(ValueError):
        sylvester_oa2(1, 1)
    with pytest.raises(ValueError):
        sylvester_oa2(3, 8)
    with pytest.raises(ValueError):
        sylvester_oa2(3, 2)


def test_sylvester_oa3_small():
    a, proj = sylvester_oa3(2, 4)
    assert a.n == 8 and a.k == 4
    assert verify_strength(a, 3).ok
    ok, _ = check_resolvable_projection(a, proj.columns)
    assert ok


def test_sylvester_oa3_larger_instances():
    a, _ = sylvester_oa3(3, 7)
    assert (a.n, a.k) == (16, 7)
    assert verify_strength(a, 3).ok
    a, _ = sylvester_oa3(4, 16)
    assert (a.n, a.k) == (32, 16)
    assert verify_strength(a, 3).ok


def test_sylvester_oa3_bounds():
    with pytest.raises(ValueError):
        sylvester_oa3(3, 3)
    with pytest.raises(ValueError):
        sylvester_oa3(3, 9)


def test_field_rank_and_det():
    f = make_field(3, 1)
    assert field_rank(f, [(1, 0), (0, 1)]) == 2
    assert field_rank(f, [(1, 2), (2, 2)]) == 2  # det = 2 - 4 = 1 mod 3
    assert field_rank(f, [(1, 2), (2, 1)]) == 1  # (2,1) = 2 * (1,2) mod 3
    assert field_det(f, [[1, 0], [0, 1]]) == 1
    assert field_det(f, [[1, 2], [2, 1]]) == 0  # 1 - 4 = -3 = 0 mod 3
    assert field_det(f, [[0, 1], [1, 0]]) == f.neg(1)


def test_projective_columns_counts():
    assert len(projective_columns(2, 3).columns) == 7
    assert len(projective_columns(3, 2).columns) == 4
    gc = projective_columns(4, 2)
    assert len(gc.columns) == 5
    assert verify_generator_columns(gc) is None  # any 2 independent


def test_linear_oa_binary_hamming():
    gc = projective_columns(2, 3)
    a, proj = linear_oa(gc, 7)
    assert (a.n, a.k) == (8, 7)
    assert verify_strength(a, 2).ok
    ok, _ = check_resolvable_projection(a, proj.columns)
    assert ok
    # same parameters as the Sylvester-derived array
    s, _ = sylvester_oa2(3, 7)
    assert (s.n, s.k) == (a.n, a.k)


def test_linear_oa_ternary():
    a, _ = linear_oa(projective_columns(3, 2), 4)
    assert (a.n, a.k) == (9, 4)
    assert verify_strength(a, 2).ok


def test_linear_oa_rejects_dependent_columns():
    f = make_field(2, 1)
    gc = GeneratorColumns(f, 2, ((1, 0), (1, 0), (0, 1)), 2)
    with pytest.raises(VerificationError):
        linear_oa(gc, 3)


def test_linear_oa_expansion_size():
    a, proj = linear_oa(projective_columns(3, 2), 4)
    ls = expand_shift(a, proj)
    assert ls.m == 3 ** (4 - 2)


def test_bush_columns():
    gc = bush_columns(3, 3)
    assert len(gc.columns) == 4
    a, _ = linear_oa(gc, 4)
    assert (a.n, a.k) == (27, 4)
    assert verify_strength(a, 3).ok

    gc = bush_columns(4, 3)
    assert len(gc.columns) == 6  # q + 2 in even characteristic
    a, _ = linear_oa(gc, 6)
    assert (a.n, a.k) == (64, 6)
    assert verify_strength(a, 3).ok

    gc = bush_columns(5, 4)
    assert len(gc.columns) == 6
    # independent Vandermonde oracle: every 4x4 minor on moment columns
    f = gc.field
    for sub in itertools.combinations(range(len(gc.columns)), 4):
        mat = [gc.columns[j] for j in sub]
        assert field_det(f, list(zip(*mat))) != 0


def test_bush_range():
    with pytest.raises(ValueError):
        bush_columns(3, 5)
    with pytest.raises(ValueError):
        bush_columns(3, 1)


def test_quad_coefficient_examples():
    assert quad_coefficient(3).a == 0
    assert quad_coefficient(5).a == 1
    assert quad_coefficient(4).a == 2  # the generator x of GF(4)
    # forbidden-set oracle for q = 5
    f = make_field(5, 1)
    forbidden = {f.neg(f.add(z, f.inv(z))) for z in range(1, 5)}
    assert forbidden == {0, 2, 3}
    with pytest.raises(ValueError):
        quad_coefficient(2)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32])
def test_quad_nonvanishing_all_small_orders(q):
    qc = quad_coefficient(q)
    f = qc.field
    for x in f.elements():
        for y in f.elements():
            if (x, y) != (0, 0):
                xx = f.mul(x, x)
                yy = f.mul(y, y)
                axy = f.mul(qc.a, f.mul(x, y))
                assert f.neg(f.add(xx, f.add(axy, yy))) != 0


def test_q4_matrix_q3():
    gc = q4_matrix(3)
    assert len(gc.columns) == 10
    anchor = [gc.columns[0], gc.columns[1], gc.columns[2], gc.columns[4]]
    det = field_det(gc.field, list(zip(*anchor)))
    assert det == gc.field.minus_one
    assert verify_generator_columns(gc) is None  # all 120 triples


def test_q4_matrix_q4_exhaustive_triples():
    gc = q4_matrix(4)
    assert len(gc.columns) == 17
    assert verify_generator_columns(gc) is None  # all C(17,3)=680 triples


def test_q4_array_strengths():
    a, proj = linear_oa(q4_matrix(3), 10)
    assert (a.n, a.k) == (81, 10)
    assert verify_strength(a, 3).ok
    ok, _ = check_resolvable_projection(a, proj.columns)
    assert ok


def test_q4_full_width_q5():
    a, _ = linear_oa(q4_matrix(5), 26)
    assert (a.n, a.k) == (625, 26)
    assert verify_strength(a, 3).ok
