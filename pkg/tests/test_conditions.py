"""Tests for the 'conditions' package."""

import unittest

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ginv.algebra import Matrix, format_word
from ginv.conditions import (
    FOREIGN_VALUES,
    GENERATORS,
    PoolKind,
    SpectrumSpec,
    WordPattern,
    ab_ba_zero_from_blocks,
    annihilates,
    check_word_condition,
    gen_ab_ba_zero,
    gen_ab_zero,
    gen_ab_zero_planted,
    gen_anti_triangular,
    gen_k_ast,
    gen_k_star,
    gen_planted_spectrum,
    matches_pool,
    polynomial_in,
    random_pool,
    random_similarity,
    unity_root,
)
from ginv.config import Tolerances
from ginv.errors import ConditioningRejected, DimensionMismatch, GeneratorFailure, KTooLarge
from ginv.spectral import unity_order

E11 = Matrix([[1, 0], [0, 0]])
E12 = Matrix([[0, 1], [0, 0]])
E22 = Matrix([[0, 0], [0, 1]])

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestWordPattern(unittest.TestCase):
    """Tests for the 'WordPattern' enum."""

    def test_from_str(self) -> None:
        """Tests that every pattern parses back from its string."""
        for pattern in WordPattern:
            with self.subTest(pattern=pattern):
                self.assertEqual(WordPattern.from_str(str(pattern)), pattern)
        self.assertRaises(ValueError, WordPattern.from_str, "kstar-l")


class TestCheckWordCondition(unittest.TestCase):
    """Tests for 'check_word_condition'."""

    tol = Tolerances()

    def test_unit_matrices(self) -> None:
        """Tests each pattern on pairs of matrix units."""
        test_cases = [
            (E11, E22, WordPattern.STAR_LEFT, True),
            (E11, E22, WordPattern.AST_LEFT, True),
            (E11, E12, WordPattern.STAR_LEFT, True),
            (E11, E12, WordPattern.STAR_RIGHT, False),
            (E11, E12, WordPattern.AST_LEFT, False),
            (E11, E12, WordPattern.AST_RIGHT, True),
        ]

        for a, b, pattern, expected in test_cases:
            with self.subTest(pattern=pattern, b=b):
                self.assertEqual(check_word_condition(a, b, 1, pattern, self.tol).holds, expected)

    def test_worst_word(self) -> None:
        """Tests that the report names a violating word."""
        report = check_word_condition(E11, E12, 1, WordPattern.STAR_RIGHT, self.tol)
        self.assertEqual(format_word(report.worst_word), "A")
        self.assertAlmostEqual(report.worst_residual, 1.0)
        self.assertEqual(report.to_dict()["pattern"], "kstar-r")

    def test_longer_words_can_vanish(self) -> None:
        """Tests a pair that fails for k = 1 but holds for k = 2."""
        a = Matrix(np.eye(4, k=1))
        b = a
        self.assertFalse(check_word_condition(a, b, 1, WordPattern.STAR_LEFT, self.tol).holds)
        self.assertTrue(check_word_condition(a, b, 2, WordPattern.STAR_LEFT, self.tol).holds)

    def test_errors(self) -> None:
        """Tests argument validation."""
        self.assertRaises(KTooLarge, check_word_condition, E11, E22, 13, WordPattern.STAR_LEFT, self.tol)
        self.assertRaises(ValueError, check_word_condition, E11, E22, 0, WordPattern.STAR_LEFT, self.tol)
        self.assertRaises(
            DimensionMismatch, check_word_condition, E11, Matrix.identity(3), 1, WordPattern.STAR_LEFT, self.tol
        )


class TestPools(unittest.TestCase):
    """Tests for eigenvalue pools."""

    tol = Tolerances()

    @given(seeds, st.integers(min_value=1, max_value=8))
    @settings(max_examples=50, deadline=None)
    def test_unity_pools(self, seed: int, size: int) -> None:
        """Tests that unity pools hold zeros and roots whose orders divide 12 or less."""
        pool = random_pool(PoolKind.UNITY, size, np.random.default_rng(seed))
        self.assertEqual(len(pool), size)
        for lam in pool:
            if lam != 0:
                order = unity_order(lam, self.tol)
                self.assertIsNotNone(order)
                assert order is not None
                self.assertLessEqual(order, 12)

    @given(seeds, st.integers(min_value=1, max_value=8))
    @settings(max_examples=50, deadline=None)
    def test_foreign_pools(self, seed: int, size: int) -> None:
        """Tests that foreign pools avoid zero and the roots of unity."""
        pool = random_pool(PoolKind.FOREIGN, size, np.random.default_rng(seed))
        for lam in pool:
            self.assertIn(lam, FOREIGN_VALUES)
            self.assertIsNone(unity_order(lam, self.tol))

    def test_unity_root(self) -> None:
        """Tests the exact value at integer multiples."""
        self.assertEqual(unity_root(3, 3), 1 + 0j)
        self.assertAlmostEqual(abs(unity_root(1, 4) - 1j), 0.0)

    def test_spectrum_spec(self) -> None:
        """Tests SpectrumSpec validation."""
        self.assertEqual(SpectrumSpec((0j, 1 + 0j)).size, 2)
        self.assertRaises(ValueError, SpectrumSpec, ())
        self.assertRaises(ValueError, SpectrumSpec, (0j,), 0.5)


class TestGenerators(unittest.TestCase):
    """Tests that generators meet their contracts."""

    tol = Tolerances()

    @given(seeds, st.integers(min_value=1, max_value=8))
    @settings(max_examples=25, deadline=None)
    def test_random_similarity(self, seed: int, n: int) -> None:
        """Tests the conditioning bound."""
        try:
            s = random_similarity(n, np.random.default_rng(seed), cond_bound=8.0)
        except ConditioningRejected:
            assume(False)
            return
        self.assertLessEqual(float(np.linalg.cond(s)), 8.0 * (1 + 1e-6))

    @given(seeds, st.integers(min_value=2, max_value=6), st.sampled_from(list(PoolKind)))
    @settings(max_examples=25, deadline=None)
    def test_planted_spectrum(self, seed: int, n: int, kind: PoolKind) -> None:
        """Tests that the planted pool is recovered."""
        rng = np.random.default_rng(seed)
        pool = random_pool(kind, n, rng)
        try:
            a = gen_planted_spectrum(SpectrumSpec(pool), rng, self.tol)
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        self.assertEqual(a.n, n)
        self.assertTrue(matches_pool(a, pool, self.tol))

    @given(seeds, st.integers(min_value=2, max_value=8))
    @settings(max_examples=25, deadline=None)
    def test_ab_zero(self, seed: int, n: int) -> None:
        """Tests ab = 0 for both constructions."""
        rng = np.random.default_rng(seed)
        try:
            pairs = [gen_ab_zero(n, rng, self.tol), gen_ab_zero_planted(n, rng, tol=self.tol)]
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        for a, b in pairs:
            self.assertTrue(annihilates(a, b))

    @given(seeds, st.integers(min_value=2, max_value=8))
    @settings(max_examples=25, deadline=None)
    def test_ab_ba_zero(self, seed: int, n: int) -> None:
        """Tests ab = ba = 0."""
        try:
            a, b = gen_ab_ba_zero(n, np.random.default_rng(seed), self.tol)
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        self.assertTrue(annihilates(a, b))
        self.assertTrue(annihilates(b, a))

    @given(seeds, st.integers(min_value=1, max_value=4))
    @settings(max_examples=25, deadline=None)
    def test_k_star(self, seed: int, k: int) -> None:
        """Tests both k-star conditions and the order bound."""
        try:
            a, b = gen_k_star(k, np.random.default_rng(seed), tol=self.tol)
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        self.assertLessEqual(a.n, 8)
        self.assertTrue(check_word_condition(a, b, k, WordPattern.STAR_LEFT, self.tol).holds)
        self.assertTrue(check_word_condition(a, b, k, WordPattern.STAR_RIGHT, self.tol).holds)

    @given(seeds, st.integers(min_value=1, max_value=3), st.booleans(), st.booleans())
    @settings(max_examples=25, deadline=None)
    def test_k_ast(self, seed: int, k: int, commuting: bool, mirrored: bool) -> None:
        """Tests the k-ast condition in both orientations."""
        pattern = WordPattern.AST_RIGHT if mirrored else WordPattern.AST_LEFT
        try:
            a, b = gen_k_ast(k, np.random.default_rng(seed), commuting, pattern, tol=self.tol)
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        self.assertTrue(check_word_condition(a, b, k, pattern, self.tol).holds)

    @given(seeds, st.integers(min_value=1, max_value=3))
    @settings(max_examples=25, deadline=None)
    def test_anti_triangular(self, seed: int, k: int) -> None:
        """Tests that (a, bc) is a k-star pair in one order or the other."""
        try:
            a, b, c = gen_anti_triangular(k, np.random.default_rng(seed), self.tol)
        except (ConditioningRejected, GeneratorFailure):
            assume(False)
            return
        bc = b @ c
        forward = check_word_condition(a, bc, k, WordPattern.STAR_LEFT, self.tol).holds
        backward = check_word_condition(bc, a, k, WordPattern.STAR_LEFT, self.tol).holds
        self.assertTrue(forward or backward)

    def test_generators_by_name(self) -> None:
        """Tests that every named generator returns matrices of one order."""
        for name, generator in GENERATORS.items():
            with self.subTest(name=name):
                matrices = generator(3, 1, np.random.default_rng(12), self.tol)
                self.assertIn(len(matrices), (1, 2, 3))
                self.assertEqual(len({m.n for m in matrices}), 1)


class TestBuildingBlocks(unittest.TestCase):
    """Tests for the deterministic helpers."""

    def test_ab_ba_zero_from_blocks(self) -> None:
        """Tests the block construction without a similarity."""
        a, b = ab_ba_zero_from_blocks(Matrix.scalar(2), Matrix.scalar(3))
        self.assertEqual(a, Matrix([[2, 0], [0, 0]]))
        self.assertEqual(b, Matrix([[0, 0], [0, 3]]))

    def test_polynomial_in(self) -> None:
        """Tests Horner evaluation."""
        m = Matrix([[0, 1], [0, 0]])
        self.assertEqual(polynomial_in(m, [2, 3, 5]), Matrix([[2, 3], [0, 2]]))
        self.assertEqual(polynomial_in(m, []), Matrix.zero(2))


if __name__ == "__main__":
    unittest.main()
