"""Tests for the 'inverse' package."""

import cmath
import math
import unittest
from typing import List

from ginv.algebra import Matrix, block_diag, mat_power
from ginv.config import Tolerances
from ginv.errors import NumericAmbiguity
from ginv.inverse import (
    InverseKind,
    WitnessOverflow,
    classify,
    drazin,
    drazin_by_pinv,
    g_hirano,
    g_pi_hirano,
    g_pi_hirano_oracle,
    g_pi_hirano_pairwise_oracle,
    group_inverse,
    gs_drazin,
    invert,
    pinv,
)
from tests import ClassifyCase, max_entry, similar

M44 = Matrix([[1, 1], [-1, 0]])
J2 = Matrix([[0, 1], [0, 0]])


class TestInverseKind(unittest.TestCase):
    """Tests for the 'InverseKind' enum."""

    def test_from_str(self) -> None:
        """Tests that every kind parses back from its string."""
        for kind in InverseKind:
            with self.subTest(kind=kind):
                self.assertEqual(InverseKind.from_str(str(kind)), kind)

    def test_from_str_with_invalid_kind(self) -> None:
        """Tests the 'from_str' method with an invalid kind."""
        self.assertRaises(ValueError, InverseKind.from_str, "moore-penrose")


class TestDrazin(unittest.TestCase):
    """Tests for the Drazin, group and Moore-Penrose inverses."""

    tol = Tolerances()

    def test_invertible(self) -> None:
        """Tests that the Drazin inverse of an invertible matrix is its inverse."""
        a = Matrix([[2, 1], [1, 1]])
        witness = drazin(a, self.tol)
        self.assertEqual(witness.drazin_index, 0)
        self.assertLess(max_entry(witness.x - Matrix([[1, -1], [-1, 2]])), 1e-12)
        self.assertTrue(witness.residuals.within(self.tol))

    def test_nilpotent(self) -> None:
        """Tests that nilpotent matrices have Drazin inverse zero."""
        witness = drazin(J2, self.tol)
        self.assertEqual(witness.x, Matrix.zero(2))
        self.assertEqual(witness.drazin_index, 2)

    def test_defining_identities(self) -> None:
        """Tests xax = x, ax = xa and a^(k+1) x = a^k on a mixed matrix."""
        a = similar(block_diag(Matrix([[2, 1], [0, -1]]), Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])), 7)
        witness = drazin(a, self.tol)
        x, k = witness.x, witness.drazin_index
        self.assertEqual(k, 3)
        self.assertLess(max_entry(x @ a @ x - x), 1e-9)
        self.assertLess(max_entry(a @ x - x @ a), 1e-9)
        self.assertLess(max_entry(mat_power(a, k + 1) @ x - mat_power(a, k)), 1e-8)
        self.assertLess(max_entry(x - drazin_by_pinv(a, self.tol)), 1e-7)

    def test_group_inverse(self) -> None:
        """Tests that group inverses exist exactly for index at most 1."""
        idempotent = Matrix([[1, 1], [0, 0]])
        witness = group_inverse(idempotent, self.tol)
        self.assertIsNotNone(witness)
        assert witness is not None
        self.assertEqual(witness.kind, InverseKind.GROUP)
        self.assertLess(max_entry(witness.x - idempotent), 1e-12)
        self.assertIsNone(group_inverse(J2, self.tol))

    def test_pinv(self) -> None:
        """Tests the Moore-Penrose identities on a rank-one matrix."""
        a = Matrix([[1, 2], [2, 4]])
        x = pinv(a, self.tol)
        self.assertLess(max_entry(a @ x @ a - a), 1e-12)
        self.assertLess(max_entry(x @ a @ x - x), 1e-12)
        self.assertLess(max_entry((a @ x).conj_transpose() - a @ x), 1e-12)


class TestClassify(unittest.TestCase):
    """Tests for the spectral classifier."""

    tol = Tolerances()

    def test_flags(self) -> None:
        """Tests membership flags on matrices with known spectra."""
        test_cases: List[ClassifyCase] = [
            {
                "matrix": Matrix.identity(2),
                "flags": {"invertible": True, "group_invertible": True, "gs_drazin": True, "quasinilpotent": False},
            },
            {
                "matrix": J2,
                "flags": {"invertible": False, "group_invertible": False, "g_hirano": True, "quasinilpotent": True},
            },
            {
                "matrix": Matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
                "flags": {"gs_drazin": False, "g_hirano": True, "g_pi_hirano": True},
            },
            {
                "matrix": M44,
                "flags": {"invertible": True, "g_hirano": False, "g_pi_hirano": True},
            },
            {
                "matrix": Matrix([[1, 1], [1, 0]]),
                "flags": {"g_drazin": True, "g_pi_hirano": False, "g_hirano": False},
            },
            {
                "matrix": Matrix([[2]]),
                "flags": {"invertible": True, "g_pi_hirano": False},
            },
        ]

        for test_case in test_cases:
            with self.subTest(test_case=test_case):
                flags = classify(test_case["matrix"], self.tol).flags
                for flag, expected in test_case["flags"].items():
                    self.assertEqual(flags[flag], expected, flag)

    def test_witness(self) -> None:
        """Tests that the witness is the lcm of the unity orders."""
        omega3 = cmath.exp(2j * math.pi / 3)
        test_cases = {
            "sixth root": (M44, 6),
            "nilpotent": (J2, 1),
            "mixed orders": (similar(Matrix([[omega3, 1, 0], [0, 1j, 0], [0, 0, 0]]), 11), 12),
            "sign": (Matrix([[-1]]), 2),
        }

        for name, (m, expected) in test_cases.items():
            with self.subTest(name=name):
                self.assertEqual(classify(m, self.tol).gpih_witness_n, expected)

    def test_ambiguous(self) -> None:
        """Tests that near misses of a root of unity are not decided."""
        self.assertRaises(NumericAmbiguity, classify, Matrix([[1 + 5e-6]]), self.tol)

    def test_witness_overflow(self) -> None:
        """Tests that witnesses above n_oracle * n_max_unity are flagged, not verified."""
        tol = Tolerances(n_max_unity=3, n_oracle=1)
        a = Matrix([[cmath.exp(2j * math.pi / 3), 0], [0, -1]])
        self.assertTrue(classify(a, tol).witness_overflow)
        with self.assertRaises(WitnessOverflow) as ctx:
            g_pi_hirano(a, tol)
        self.assertFalse(ctx.exception.witness.verified)
        self.assertEqual(ctx.exception.witness.witness_n, 6)

    def test_adjacent_roots_of_unity(self) -> None:
        """Tests that roots of orders 63 and 64 are told apart, giving a witness of 4032."""
        a = Matrix([[cmath.exp(2j * math.pi / 63), 0], [0, cmath.exp(2j * math.pi / 64)]])
        report = classify(a, self.tol)
        self.assertTrue(report.g_pi_hirano)
        self.assertEqual(report.gpih_witness_n, 4032)
        self.assertTrue(report.witness_overflow)
        self.assertRaises(WitnessOverflow, g_pi_hirano, a, self.tol)

    def test_rounding_noise_is_nilpotent(self) -> None:
        """Tests that eigenvalues far below tol_eig count as zero instead of ambiguous."""
        report = classify(Matrix([[1, 2], [3, 4]]).scaled(1e-17), self.tol)
        self.assertTrue(report.quasinilpotent)
        self.assertTrue(report.g_pi_hirano)
        self.assertFalse(report.invertible)
        self.assertEqual(report.gpih_witness_n, 1)


class TestClassInverses(unittest.TestCase):
    """Tests for the g-pi-Hirano, gs-Drazin and g-Hirano inverses."""

    tol = Tolerances()

    def test_sixth_root(self) -> None:
        """Tests the g-pi-Hirano inverse of [[1, 1], [-1, 0]]."""
        witness = g_pi_hirano(M44, self.tol)
        self.assertIsNotNone(witness)
        assert witness is not None
        self.assertEqual(witness.witness_n, 6)
        self.assertLess(max_entry(witness.x - Matrix([[0, -1], [1, 1]])), 1e-10)
        self.assertIsNone(g_hirano(M44, self.tol))
        self.assertIsNone(g_pi_hirano(Matrix([[1, 1], [1, 0]]), self.tol))

    def test_gs_drazin_and_g_hirano(self) -> None:
        """Tests the spectral conditions {0, 1} and {0, 1, -1}."""
        idempotent = similar(Matrix([[1, 0], [0, 0]]), 3)
        involution = similar(Matrix([[1, 0], [0, -1]]), 4)
        self.assertIsNotNone(gs_drazin(idempotent, self.tol))
        self.assertIsNone(gs_drazin(involution, self.tol))
        x = g_hirano(involution, self.tol)
        self.assertIsNotNone(x)
        assert x is not None
        self.assertLess(max_entry(x - involution), 1e-10)

    def test_invert_dispatch(self) -> None:
        """Tests that 'invert' labels each witness with its kind."""
        a = Matrix([[1, 0], [0, 0]])
        for kind in InverseKind:
            with self.subTest(kind=kind):
                witness = invert(a, kind, self.tol)
                self.assertIsNotNone(witness)
                assert witness is not None
                self.assertEqual(witness.kind, kind)
                self.assertLess(max_entry(witness.x - a), 1e-12)
                self.assertTrue(witness.residuals.within(self.tol))


class TestOracles(unittest.TestCase):
    """Tests for the brute-force oracles."""

    tol = Tolerances()

    def test_oracle(self) -> None:
        """Tests the smallest n with a - a^(n+1) nilpotent."""
        test_cases = {
            "sixth root": (M44, 6),
            "nilpotent": (J2, 1),
            "identity": (Matrix.identity(2), 1),
            "golden": (Matrix([[1, 1], [1, 0]]), None),
        }

        for name, (m, expected) in test_cases.items():
            with self.subTest(name=name):
                self.assertEqual(g_pi_hirano_oracle(m, self.tol), expected)

    def test_pairwise_oracle(self) -> None:
        """Tests the smallest-gap pair with a^m - a^n nilpotent."""
        self.assertEqual(g_pi_hirano_pairwise_oracle(M44, self.tol), (1, 7))
        self.assertEqual(g_pi_hirano_pairwise_oracle(J2, self.tol), (1, 2))
        self.assertIsNone(g_pi_hirano_pairwise_oracle(Matrix([[2]]), Tolerances(n_oracle=8)))


if __name__ == "__main__":
    unittest.main()
