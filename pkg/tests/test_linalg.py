"""Exact matrix layer: Bareiss vs LU cross-validation and the LU machinery."""

import random
from fractions import Fraction

import pytest

from arctic.combinat import catalan
from arctic.linalg import (
    ExactMatrix,
    SingularMinorError,
    det_bareiss,
    det_ratio_last_column,
    gf_convolve_truncated,
    leading_principal_minors,
    lu_exact,
    unit_lower_inverse,
)
from arctic.models import (
    ModelId,
    MODEL_OPS,
    aztec_closed_lu,
    aztec_matrix,
    dyck_closed_L,
    dyck_matrix,
    pascal_closed_lu,
    red_closed_L,
    staircase_matrix,
)


def test_matrix_validation():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        ExactMatrix(0, 1, [])
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_matrix_basic_ops():
    m = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.transpose()[0, 1] == 3
    assert m.column(1) == (2, 4)
    assert (m @ ExactMatrix.identity(2)) == m
    assert m.with_column(1, [9, 9]).column(1) == (9, 9)
    with pytest.raises(IndexError):
        m[2, 0]


def test_det_identity():
    assert det_bareiss(ExactMatrix.identity(5)) == 1


def test_det_aztec_counts_tilings():
    # 4x4 path-weight matrix of the order-3 diamond: 2^(3*4/2) tilings.
    assert det_bareiss(aztec_matrix(3)) == 64


def test_det_catalan_hankel_is_one():
    m = ExactMatrix.from_function(5, 5, lambda i, j: catalan(1 + i + j))
    assert det_bareiss(m) == 1


def test_det_handles_zero_pivot_with_row_swap():
    m = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert det_bareiss(m) == -1
    assert det_bareiss(ExactMatrix.from_rows([[0, 0], [0, 0]])) == 0


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_bareiss(ExactMatrix(1, 2, [1, 2]))


def test_bareiss_equals_lu_product_on_random_matrices():
    rng = random.Random(1729)
    done = 0
    while done < 50:
        m = ExactMatrix.from_function(6, 6, lambda i, j: rng.randint(-9, 9))
        try:
            lu = lu_exact(m)
        except SingularMinorError:
            continue  # needs all leading minors nonzero
        assert lu.determinant() == det_bareiss(m)
        assert lu.reconstruct() == m
        done += 1


def test_leading_principal_minors_match_per_size_dets():
    m = staircase_matrix(6)
    minors = leading_principal_minors(m)
    for size in range(1, 7):
        assert minors[size - 1] == det_bareiss(m.truncate(size))


def test_lu_identity():
    lu = lu_exact(ExactMatrix.identity(4))
    assert lu.L == ExactMatrix.identity(4)
    assert lu.U == ExactMatrix.identity(4)


def test_lu_aztec_diagonal():
    assert lu_exact(aztec_matrix(2)).u_diagonal() == (1, 2, 4)


def test_lu_dyck_diagonal_and_det():
    lu = lu_exact(dyck_matrix(1, 2))
    assert lu.u_diagonal() == (2, Fraction(3, 2))
    assert lu.determinant() == 3


def test_lu_reports_failing_minor():
    with pytest.raises(SingularMinorError) as err:
        lu_exact(ExactMatrix.from_rows([[0, 1], [1, 0]]))
    assert err.value.index == 0


def test_unit_lower_inverse():
    low = lu_exact(aztec_matrix(4)).L
    assert unit_lower_inverse(low) @ low == ExactMatrix.identity(5)


# ---------------------------------------------------------------------------
# Last-column replacement
# ---------------------------------------------------------------------------


def test_det_ratio_with_original_column_is_one():
    m = aztec_matrix(3)
    lu = lu_exact(m)
    l_inv = unit_lower_inverse(lu.L)
    b = m.column(3)
    got = det_ratio_last_column(l_inv.row(3), b, lu.U[3, 3])
    assert got == 1


@pytest.mark.parametrize("ell,want", [(1, Fraction(3, 4)), (0, Fraction(1, 4))])
def test_det_ratio_matches_full_determinant_ratio(ell, want):
    from arctic.models import aztec_b_column

    n = 2
    m = aztec_matrix(n)
    b = aztec_b_column(n, ell)
    # Independent oracle: ratio of two full Bareiss determinants.
    oracle = det_bareiss(m.with_column(n, b)) / det_bareiss(m)
    assert oracle == want
    lu = lu_exact(m)
    got = det_ratio_last_column(aztec_closed_lu(n).L_inv.row(n), b, lu.U[n, n])
    assert got == oracle


def test_det_ratio_matches_bareiss_for_all_models():
    sizes = {
        ModelId.AZTEC: [(n, None) for n in range(1, 6)],
        ModelId.DYCK_HALF_HEX: [(n, k) for n in range(0, 4) for k in (1, 2, 3)],
        ModelId.RED_HALF_HEX: [(n, k) for n in range(0, 4) for k in (2, 3, 4)],
        ModelId.STAIRCASE: [(n, None) for n in range(1, 6)],
        ModelId.STAIRCASE_ALT: [(n, None) for n in range(1, 6)],
    }
    for model, cases in sizes.items():
        ops = MODEL_OPS[model]
        for n, k in cases:
            matrix = ops.matrix(n, k)
            det = det_bareiss(matrix)
            lu = lu_exact(matrix)
            l_inv = ops.closed_l_inv(n, k)
            top = matrix.rows - 1
            for ell in range(ops.ell_max(n, k) + 1):
                b = ops.b_column(n, k, ell)
                fast = det_ratio_last_column(l_inv.row(top), b, lu.U[top, top])
                slow = det_bareiss(matrix.with_column(top, b)) / det
                assert fast == slow, (model, n, k, ell)


def test_det_ratio_validation():
    with pytest.raises(ValueError):
        det_ratio_last_column([1, 2], [1], 1)
    with pytest.raises(ZeroDivisionError):
        det_ratio_last_column([1], [1], 0)


# ---------------------------------------------------------------------------
# Truncation property of infinite LU factorizations
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "family",
    [
        lambda size: aztec_matrix(size - 1),
        lambda size: dyck_matrix(size - 1, 2),
        lambda size: staircase_matrix(size - 1),
        lambda size: MODEL_OPS[ModelId.RED_HALF_HEX].matrix(2, size),
    ],
)
def test_lu_commutes_with_truncation(family):
    for n in range(0, 9):
        small = lu_exact(family(n + 1))
        big = lu_exact(family(n + 5))
        assert big.L.truncate(n + 1) == small.L
        assert big.U.truncate(n + 1) == small.U


def test_closed_l_inverses_at_size_thirty():
    clu = aztec_closed_lu(30)
    assert clu.L_inv @ clu.L == ExactMatrix.identity(31)
    L, Linv = dyck_closed_L(30, 3)
    assert Linv @ L == ExactMatrix.identity(31)
    L, Linv = red_closed_L(2, 31)
    assert Linv @ L == ExactMatrix.identity(31)
    p = pascal_closed_lu(30)
    assert p.L_inv @ p.L == ExactMatrix.identity(31)


# ---------------------------------------------------------------------------
# Truncated generating-function convolution
# ---------------------------------------------------------------------------


def test_convolution_of_closed_factors_gives_path_weights():
    clu = aztec_closed_lu(5)
    table = gf_convolve_truncated(clu.L, clu.U, 6)
    assert table == aztec_matrix(5)


def test_identity_series_is_neutral():
    rng = random.Random(7)
    f = ExactMatrix.from_function(6, 6, lambda i, j: rng.randint(-5, 5))
    identity_table = ExactMatrix.identity(6)  # coefficients of 1/(1 - zw)
    assert gf_convolve_truncated(identity_table, f, 6) == f
    assert gf_convolve_truncated(f, identity_table, 6) == f


def test_inverse_factor_convolves_to_identity():
    clu = aztec_closed_lu(5)
    got = gf_convolve_truncated(clu.L_inv, clu.L, 6)
    assert got == clu.L_inv @ clu.L == ExactMatrix.identity(6)


def test_convolution_size_mismatch():
    with pytest.raises(ValueError):
        gf_convolve_truncated(ExactMatrix.identity(3), ExactMatrix.identity(6), 5)
