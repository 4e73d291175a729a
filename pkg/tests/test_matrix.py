"""Tests for the 'matrix' module."""

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.algebra import (
    Letter,
    Matrix,
    approx_zero,
    block_diag,
    format_word,
    mat_from_blocks2,
    mat_power,
    parse_word,
    relative_residual,
    word_product,
)
from ginv.config import Tolerances
from ginv.errors import DimensionMismatch, OverflowDetected
from tests import random_matrix

seeds = st.integers(min_value=0, max_value=2**32 - 1)
words = st.text(alphabet="AB", max_size=6)

ROUNDING = 1e-12


class TestMatrix(unittest.TestCase):
    """Tests for the 'Matrix' class."""

    def test_rejects_bad_shapes(self) -> None:
        """Tests that non-square and empty inputs are rejected."""
        test_cases = {
            "row": [[1, 2]],
            "vector": [1, 2],
            "empty": [[]],
        }

        for name, value in test_cases.items():
            with self.subTest(name=name):
                self.assertRaises(ValueError, Matrix, value)

    def test_rejects_non_finite(self) -> None:
        """Tests that NaN and infinite entries are rejected."""
        self.assertRaises(ValueError, Matrix, [[math.nan]])
        self.assertRaises(ValueError, Matrix, [[1, math.inf], [0, 1]])

    def test_immutable(self) -> None:
        """Tests that the entries cannot be written."""
        m = Matrix.identity(2)
        with self.assertRaises(ValueError):
            m.value[0, 0] = 2

    def test_ring_operations(self) -> None:
        """Tests addition, subtraction, negation, products and scaling."""
        a = Matrix([[1, 2], [3, 4]])
        b = Matrix([[0, 1j], [1, 0]])
        self.assertEqual(a + b, Matrix([[1, 2 + 1j], [4, 4]]))
        self.assertEqual(a - a, Matrix.zero(2))
        self.assertEqual(-a + a, Matrix.zero(2))
        self.assertEqual(a @ Matrix.identity(2), a)
        self.assertEqual(a @ b, Matrix([[2, 1j], [4, 3j]]))
        self.assertEqual(a.scaled(2), a + a)

    def test_dimension_mismatch(self) -> None:
        """Tests that orders must agree."""
        a, b = Matrix.identity(2), Matrix.identity(3)
        self.assertRaises(DimensionMismatch, lambda: a + b)
        self.assertRaises(DimensionMismatch, lambda: a @ b)
        self.assertRaises(DimensionMismatch, word_product, a, b, parse_word("AB"))

    def test_overflow(self) -> None:
        """Tests that products leaving the finite range are reported."""
        big = Matrix([[1e200]])
        with np.errstate(over="ignore"):
            self.assertRaises(OverflowDetected, lambda: big @ big)

    def test_norms_and_transposes(self) -> None:
        """Tests the Frobenius and spectral norms and both transposes."""
        m = Matrix([[3, 0], [4j, 0]])
        self.assertAlmostEqual(m.norm(), 5.0)
        self.assertAlmostEqual(m.norm2(), 5.0)
        self.assertEqual(m.transpose(), Matrix([[3, 4j], [0, 0]]))
        self.assertEqual(m.conj_transpose(), Matrix([[3, -4j], [0, 0]]))

    def test_equality_with_non_matrix(self) -> None:
        """Tests that a 'Matrix' is not equal to other values."""
        self.assertNotEqual(Matrix.identity(1), 1)


class TestWords(unittest.TestCase):
    """Tests for words over {A, B}."""

    def test_letter(self) -> None:
        """Tests the 'from_str' and '__str__' methods."""
        self.assertEqual(Letter.from_str("A"), Letter.A)
        self.assertEqual(str(Letter.B), "B")
        self.assertRaises(ValueError, Letter.from_str, "a")

    def test_word_product(self) -> None:
        """Tests that words multiply left to right."""
        a = Matrix([[0, 1], [0, 0]])
        b = Matrix([[0, 0], [1, 0]])
        test_cases = {
            "": Matrix.identity(2),
            "A": a,
            "AB": Matrix([[1, 0], [0, 0]]),
            "BA": Matrix([[0, 0], [0, 1]]),
            "AA": Matrix.zero(2),
        }

        for word, expected in test_cases.items():
            with self.subTest(word=word):
                self.assertEqual(word_product(a, b, parse_word(word)), expected)
                self.assertEqual(format_word(parse_word(word)), word)


class TestConstructions(unittest.TestCase):
    """Tests for powers and block constructions."""

    def test_mat_power(self) -> None:
        """Tests repeated squaring against repeated multiplication."""
        m = Matrix([[1, 1], [0, 1]])
        for k in range(8):
            with self.subTest(k=k):
                self.assertEqual(mat_power(m, k), Matrix([[1, k], [0, 1]]))
        self.assertRaises(ValueError, mat_power, m, -1)

    def test_blocks(self) -> None:
        """Tests 2-by-2 block assembly and block-diagonal sums."""
        one, zero = Matrix.identity(1), Matrix.zero(1)
        self.assertEqual(mat_from_blocks2(one, zero, zero, one), Matrix.identity(2))
        self.assertEqual(block_diag(one, Matrix.scalar(2)), Matrix([[1, 0], [0, 2]]))
        self.assertRaises(DimensionMismatch, mat_from_blocks2, one, one, one, Matrix.identity(2))
        self.assertRaises(ValueError, block_diag)

    def test_approx_zero(self) -> None:
        """Tests that vanishing is judged relative to the supplied scale."""
        tol = Tolerances()
        small = Matrix([[1e-7]])
        self.assertFalse(approx_zero(small, 1.0, tol))
        self.assertTrue(approx_zero(small, 1e3, tol))
        self.assertTrue(approx_zero(Matrix.zero(2), 0.0, tol))
        self.assertRaises(ValueError, approx_zero, small, -1.0, tol)
        self.assertAlmostEqual(relative_residual(Matrix([[2.0]]), 0.5), 2.0)
        self.assertAlmostEqual(relative_residual(Matrix([[2.0]]), 4.0), 0.5)


class TestRingLaws(unittest.TestCase):
    """Algebraic laws on random matrices."""

    def assert_close(self, x: Matrix, y: Matrix) -> None:
        self.assertLess((x - y).norm(), ROUNDING * max(1.0, x.norm(), y.norm()))

    @given(seeds, st.integers(min_value=1, max_value=6))
    @settings(max_examples=50, deadline=None)
    def test_associative(self, seed: int, n: int) -> None:
        """(xy)z = x(yz)."""
        rng = np.random.default_rng(seed)
        x, y, z = (random_matrix(rng, n) for _ in range(3))
        self.assert_close((x @ y) @ z, x @ (y @ z))

    @given(seeds, st.integers(min_value=1, max_value=6))
    @settings(max_examples=50, deadline=None)
    def test_distributive(self, seed: int, n: int) -> None:
        """x(y + z) = xy + xz and (y + z)x = yx + zx."""
        rng = np.random.default_rng(seed)
        x, y, z = (random_matrix(rng, n) for _ in range(3))
        self.assert_close(x @ (y + z), x @ y + x @ z)
        self.assert_close((y + z) @ x, y @ x + z @ x)

    @given(seeds, st.integers(min_value=1, max_value=5), words, words)
    @settings(max_examples=50, deadline=None)
    def test_word_concatenation(self, seed: int, n: int, u: str, v: str) -> None:
        """The product of a concatenated word is the product of the parts."""
        rng = np.random.default_rng(seed)
        a, b = random_matrix(rng, n), random_matrix(rng, n)
        whole = word_product(a, b, parse_word(u + v))
        self.assert_close(whole, word_product(a, b, parse_word(u)) @ word_product(a, b, parse_word(v)))

    @given(
        seeds,
        st.integers(min_value=1, max_value=5),
        st.integers(min_value=0, max_value=12),
        st.integers(min_value=0, max_value=12),
    )
    @settings(max_examples=50, deadline=None)
    def test_power_addition(self, seed: int, n: int, j: int, k: int) -> None:
        """a^(j+k) = a^j a^k."""
        a = random_matrix(np.random.default_rng(seed), n)
        self.assert_close(mat_power(a, j + k), mat_power(a, j) @ mat_power(a, k))


if __name__ == "__main__":
    unittest.main()
