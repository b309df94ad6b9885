import numpy as np
import pytest

from conftest import random_pmf
from kappagen.constraints import (MAX_CELLS_DEFAULT, MAX_DIMS_BY_K, build_mat,
                                  build_constraint_matrix, build_rhs,
                                  check_size_cap, pair_order)
from kappagen.errors import SizeCapError, ValidationError


def test_build_mat_runs_first_variable_fastest():
    mat = build_mat(3, 2)
    expected = np.array([
        [1, 1], [2, 1], [3, 1],
        [1, 2], [2, 2], [3, 2],
        [1, 3], [2, 3], [3, 3],
    ])
    assert np.array_equal(mat.rows, expected)


def test_build_mat_three_binary_variables():
    mat = build_mat((2, 2, 2))
    expected = np.array([
        [1, 1, 1], [2, 1, 1], [1, 2, 1], [2, 2, 1],
        [1, 1, 2], [2, 1, 2], [1, 2, 2], [2, 2, 2],
    ])
    assert np.array_equal(mat.rows, expected)


def test_build_mat_mixed_category_counts():
    mat = build_mat((2, 3))
    assert mat.rows.shape == (6, 2)
    # column 0 cycles with period 2, column 1 with period 2*3
    assert np.array_equal(mat.rows[:, 0], [1, 2, 1, 2, 1, 2])
    assert np.array_equal(mat.rows[:, 1], [1, 1, 2, 2, 3, 3])


def test_build_mat_scalar_needs_dimension():
    with pytest.raises(ValidationError):
        build_mat(3)


def test_pair_order_is_lexicographic():
    assert pair_order(2) == [(0, 1)]
    assert pair_order(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_bivariate_system_matches_hand_built_oracle():
    a = build_constraint_matrix(3, 2)
    assert a.shape == (7, 9)
    hand = np.zeros((7, 9))
    for i in range(3):           # rater A marginals: rows of the 3x3 table
        t = np.zeros((3, 3)); t[i, :] = 1.0
        hand[i] = t.ravel(order="F")
    for j in range(3):           # rater B marginals: columns
        t = np.zeros((3, 3)); t[:, j] = 1.0
        hand[3 + j] = t.ravel(order="F")
    hand[6] = np.eye(3).ravel(order="F")
    assert np.array_equal(a, hand)


def test_trivariate_agreement_rows_mark_matching_cells():
    a = build_constraint_matrix(2, 3)
    assert a.shape == (9, 8)
    # pair (0, 1): cells with x1 == x2 are flat cells 1, 4, 5, 8 (1-based)
    assert np.array_equal(np.flatnonzero(a[6]) + 1, [1, 4, 5, 8])
    # pair (0, 2): x1 == x3 at (1,*,1) and (2,*,2)
    assert np.array_equal(np.flatnonzero(a[7]) + 1, [1, 3, 6, 8])
    # pair (1, 2): x2 == x3 at (*,1,1) and (*,2,2)
    assert np.array_equal(np.flatnonzero(a[8]) + 1, [1, 2, 7, 8])


def test_constraint_rows_reproduce_product_table_targets():
    # For an independent product table the system must read back the exact
    # marginals and pairwise diagonal masses.
    rng = np.random.default_rng(8)
    for cats in [(2, 2), (3, 4), (2, 3, 4), (3, 3, 3)]:
        mat = build_mat(cats)
        a = build_constraint_matrix(cats, mat=mat)
        pmat = [random_pmf(rng, k) for k in cats]
        joint = pmat[0]
        for p in pmat[1:]:
            joint = np.multiply.outer(joint, p)
        cells = joint.ravel(order="F")
        agreements = [float(pmat[i][: min(cats[i], cats[j])]
                            @ pmat[j][: min(cats[i], cats[j])])
                      for i, j in pair_order(len(cats))]
        b = build_rhs(pmat, agreements)
        assert np.allclose(a @ cells, b, atol=1e-12)


def test_category_relabeling_permutes_columns_consistently():
    # Relabeling every variable's categories by the same permutation permutes
    # the flat cells; marginal rows follow the permutation and agreement rows
    # are invariant.
    cats = (3, 3)
    mat = build_mat(cats)
    a = build_constraint_matrix(cats, mat=mat)
    perm = np.array([2, 0, 1])  # category j -> perm[j-1] + 1
    relabeled = np.stack([perm[mat.rows[:, i] - 1] + 1 for i in range(2)], axis=1)
    # map each relabeled row tuple back to its flat position
    flat = (relabeled[:, 0] - 1) + 3 * (relabeled[:, 1] - 1)
    col_perm = np.argsort(flat)
    b = build_constraint_matrix(cats)[:, col_perm]
    # agreement row unchanged, marginal rows permuted within each variable
    assert np.array_equal(a[6], b[6])
    for i in range(2):
        for j in range(3):
            assert np.array_equal(b[3 * i + j], a[3 * i + int(perm[j])])


def test_marginal_row_support_sizes():
    for cats in [(2, 2, 2), (3, 4)]:
        a = build_constraint_matrix(cats)
        size = int(np.prod(cats))
        r = 0
        for i, k in enumerate(cats):
            for _ in range(k):
                assert a[r].sum() == size // k
                r += 1


def test_build_rhs_orders_marginals_then_pair_targets():
    b = build_rhs([[0.2, 0.8], [0.3, 0.7]], [0.55])
    assert np.array_equal(b, [0.2, 0.8, 0.3, 0.7, 0.55])


def test_size_caps_uniform_and_general():
    check_size_cap(2, 18)
    with pytest.raises(SizeCapError):
        check_size_cap(2, 19)
    check_size_cap(3, 11)
    with pytest.raises(SizeCapError):
        check_size_cap(3, 12)
    check_size_cap(6, MAX_DIMS_BY_K[6])
    # mixed counts fall back to the flat cell cap
    check_size_cap((2,) * 16 + (4,))          # exactly 2^18 cells
    assert int(np.prod((2,) * 16 + (4,))) == MAX_CELLS_DEFAULT
    with pytest.raises(SizeCapError):
        check_size_cap((2,) * 17 + (4,))      # 2^19 cells


def test_size_cap_override():
    with pytest.raises(SizeCapError):
        check_size_cap(2, 19)
    check_size_cap(2, 19, max_cells=2 ** 19)
    with pytest.raises(SizeCapError):
        check_size_cap(2, 19, max_cells=2 ** 18)
