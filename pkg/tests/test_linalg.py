"""Exact rational linear algebra."""

import random
from fractions import Fraction

import pytest

from toric_precision import linalg


class TestRankAndSpan:
    def test_rank_small(self):
        assert linalg.rank([[1, 0], [0, 1]]) == 2
        assert linalg.rank([[1, 2], [2, 4]]) == 1
        assert linalg.rank([[0, 0]]) == 0

    def test_ones_in_span(self):
        assert linalg.in_row_span([[1, 0], [0, 1]], [1, 1])
        assert not linalg.in_row_span([[0, 1, 0, 1], [0, 0, 1, 1]], [1, 1, 1, 1])


class TestSolve:
    def test_unique(self):
        assert linalg.solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]

    def test_infeasible(self):
        assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None

    def test_underdetermined_roundtrip(self):
        rng = random.Random(5)
        for _ in range(25):
            rows = [[Fraction(rng.randint(-4, 4)) for _ in range(5)] for _ in range(3)]
            x = [Fraction(rng.randint(-3, 3)) for _ in range(5)]
            rhs = [sum(r * v for r, v in zip(row, x)) for row in rows]
            solution = linalg.solve(rows, rhs)
            assert solution is not None
            assert [sum(r * v for r, v in zip(row, solution)) for row in rows] == rhs


class TestKernel:
    def test_square_design_kernel(self):
        rows = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]
        basis = linalg.integer_kernel_basis(rows)
        assert basis == [[1, -1, -1, 1]]

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(9)
        for _ in range(25):
            rows = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(3)]
            for v in linalg.nullspace(rows):
                assert all(
                    sum(Fraction(r) * x for r, x in zip(row, v)) == 0 for row in rows
                )

    def test_kernel_dimension(self):
        rows = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]
        assert len(linalg.nullspace(rows)) == 4 - linalg.rank(rows)

    def test_empty_matrix_kernel_is_identity(self):
        assert linalg.nullspace([], 2) == [
            [Fraction(1), Fraction(0)],
            [Fraction(0), Fraction(1)],
        ]


class TestPrimitiveInteger:
    def test_scaling(self):
        assert linalg.primitive_integer([Fraction(2, 3), Fraction(-4, 3)]) == [1, -2]

    def test_leading_sign(self):
        assert linalg.primitive_integer([Fraction(-2), Fraction(4)]) == [1, -2]
        assert linalg.primitive_integer([0, -3, 6]) == [0, 1, -2]

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            linalg.primitive_integer([0, 0])
