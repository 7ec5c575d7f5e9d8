import random
from fractions import Fraction

import pytest

from utils.errors import DimensionMismatch, NotSubspace
from utils.exactla import (
    Matrix, Subspace, det, format_scalar, hstack, image_basis, intersect, inverse, kernel_basis,
    left_kernel, quotient_map, rref, scalar, solve, sum_spaces, vstack,
)


def test_scalar_parsing_and_formatting():
    assert scalar("3/6") == Fraction(1, 2)
    assert scalar(4) == Fraction(4)
    assert format_scalar(Fraction(-2, 4)) == "-1/2"
    assert format_scalar(Fraction(6, 3)) == "2"


def test_matrix_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[1, 2]]) @ Matrix.from_rows([[1, 2]])


def test_rref_and_rank():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = rref(m)
    assert pivots == (0, 1)
    assert reduced.row(0) == (1, 0, 1)
    assert reduced.row(1) == (0, 1, 1)
    assert m.rank() == 2


def test_kernels():
    m = Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    k = kernel_basis(m)
    assert k.rows == 1
    assert (m @ k.T).is_zero()
    left = left_kernel(Matrix.from_rows([[1, 2], [2, 4]]))
    assert left.rows == 1
    assert (left @ Matrix.from_rows([[1, 2], [2, 4]])).is_zero()


def test_solve_returns_none_when_inconsistent():
    m = Matrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None
    x = solve(m, [2, 4])
    assert x == (2, 0)
    assert (m @ Matrix.from_rows([x]).T).to_rows() == [[2], [4]]


def test_det_and_inverse():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert det(m) == 1
    assert m @ inverse(m) == Matrix.identity(2)
    with pytest.raises(DimensionMismatch):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_stacking():
    a = Matrix.from_rows([[1], [2]])
    b = Matrix.from_rows([[3], [4]])
    assert hstack(a, b).to_rows() == [[1, 3], [2, 4]]
    assert vstack(a, b).shape == (4, 1)
    assert vstack(cols=3).shape == (0, 3)


def test_subspace_canonical_basis():
    u = Subspace.of_vectors([[1, 1, 0], [2, 2, 0], [0, 1, 1]], 3)
    w = Subspace.of_vectors([[0, 1, 1], [1, 2, 1]], 3)
    assert u.dim == 2
    assert u == w
    assert u.contains([1, 3, 2])
    assert not u.contains([0, 0, 1])
    assert u.complement == (2,)


def test_subspace_coordinates_and_projection():
    u = Subspace.of_vectors([[1, 0, 1]], 3)
    assert u.coordinates([2, 0, 2]) == (2,)
    with pytest.raises(NotSubspace):
        u.coordinates([1, 1, 1])
    p = u.projection
    assert p.shape == (3, 2)
    assert not any(p.vecmul([1, 0, 1]))


def test_intersection_sum_and_quotient():
    u = Matrix.from_rows([[1, 0, 0], [0, 1, 0]])
    v = Matrix.from_rows([[0, 1, 0], [0, 0, 1]])
    assert intersect(u, v).to_rows() == [[0, 1, 0]]
    assert sum_spaces(u, v).rows == 3
    q = quotient_map(Matrix.from_rows([[0, 1, 0]]), u)
    assert q.shape == (1, 2)
    assert image_basis(Matrix.from_rows([[1, 2], [2, 4]])).rows == 1


def _random_matrix(rng, rows, cols):
    return Matrix.from_rows([[Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2))) for _ in range(cols)]
                             for _ in range(rows)], cols=cols)


def _column(values):
    return Matrix(len(values), 1, tuple(values))


def test_empty_and_zero_matrices():
    reduced, pivots = rref(Matrix.zeros(0, 0))
    assert reduced.shape == (0, 0) and pivots == ()
    assert kernel_basis(Matrix.zeros(2, 3)) == Matrix.identity(3)
    assert kernel_basis(Matrix.zeros(0, 2)) == Matrix.identity(2)
    assert det(Matrix.zeros(0, 0)) == 1
    assert (Matrix.zeros(2, 0) @ Matrix.zeros(0, 3)) == Matrix.zeros(2, 3)


def test_solve_single_equation():
    assert solve(Matrix.from_rows([[1, 1]]), [7]) == (7, 0)


def test_random_matrices_keep_their_invariants():
    rng = random.Random(20240611)
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        reduced, pivots = rref(m)
        assert rref(reduced) == (reduced, pivots)
        assert m.rank() == len(pivots)
        k = kernel_basis(m)
        assert len(pivots) + k.rows == cols
        assert (m @ k.T).is_zero()

        x0 = [Fraction(rng.randint(-3, 3)) for _ in range(cols)]
        b = (m @ _column(x0)).entries
        x = solve(m, b)
        assert x is not None
        assert (m @ _column(x)).entries == b

        b = [Fraction(rng.randint(-3, 3)) for _ in range(rows)]
        x = solve(m, b)
        if x is not None:
            assert list((m @ _column(x)).entries) == b
        else:
            assert hstack(m, _column(b)).rank() == m.rank() + 1


def test_inverse_of_random_invertible_matrices():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        m = _random_matrix(rng, 3, 3)
        if det(m) == 0:
            with pytest.raises(DimensionMismatch):
                inverse(m)
            continue
        assert m @ inverse(m) == Matrix.identity(3)
        assert det(inverse(m)) == 1 / det(m)
        checked += 1
