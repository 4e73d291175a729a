"""Golden fixtures: small matrices with known answers, including the counterexamples that show where
hypotheses cannot be dropped.

A counterexample asserts both that the conclusion fails and that the hypothesis it lacks is absent,
so that a change which made it "pass" would be caught as well.
"""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ..algebra import Matrix, mat_from_blocks2, mat_power
from ..conditions import WordPattern, ab_ba_zero_from_blocks, annihilates, check_word_condition
from ..config import Tolerances
from ..errors import GinvError
from ..inverse import classify, drazin, g_hirano, g_pi_hirano, g_pi_hirano_oracle
from .common import Ledger, SuiteReport, TrialReport, collect

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12
ENTRY_TOL = 1e-10


def _unit(n: int, i: int, j: int) -> Matrix:
    e = np.zeros((n, n))
    e[i, j] = 1.0
    return Matrix(e)


def _anti_triangular(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    return mat_from_blocks2(a, b, c, Matrix.zero(a.n))


def _max_entry(m: Matrix) -> float:
    return float(np.max(np.abs(m.value)))


def _kstar_fails(ledger: Ledger, a: Matrix, d: Matrix, tol: Tolerances) -> None:
    for k in (1, 2, 3):
        forward = check_word_condition(a, d, k, WordPattern.STAR_LEFT, tol).holds
        backward = check_word_condition(d, a, k, WordPattern.STAR_LEFT, tol).holds
        ledger.check(f"kstar-fails-{k}", not forward and not backward)


def sixth_root_anti_triangular(ledger: Ledger, tol: Tolerances) -> None:
    """[[1, 1], [-1, 0]] has M^6 = I and g-pi-Hirano inverse [[0, -1], [1, 1]] with witness 6."""
    m = Matrix([[1, 1], [-1, 0]])
    ledger.check("sixth-power", _max_entry(mat_power(m, 6) - Matrix.identity(2)) <= EXACT_TOL)
    witness = g_pi_hirano(m, tol)
    ledger.check("gpih", witness is not None)
    if witness is not None:
        ledger.check("witness-n", witness.witness_n == 6)
        error = _max_entry(witness.x - Matrix([[0, -1], [1, 1]]))
        ledger.residual("inverse", error, ENTRY_TOL)
    ledger.check("oracle", g_pi_hirano_oracle(m, tol) == 6)
    ledger.check("not-g-hirano", g_hirano(m, tol) is None)


def golden_anti_triangular(ledger: Ledger, tol: Tolerances) -> None:
    """[[1, 1], [1, 0]] has eigenvalues (1 +- sqrt 5) / 2 and no g-pi-Hirano inverse."""
    m = Matrix([[1, 1], [1, 0]])
    report = classify(m, tol)
    phi = (1 + math.sqrt(5)) / 2
    eigenvalues = sorted(lam.real for lam in report.spectrum.eigenvalues)
    ledger.residual("spectrum", max(abs(eigenvalues[0] - (1 - phi)), abs(eigenvalues[1] - phi)), ENTRY_TOL)
    ledger.check("not-gpih", not report.g_pi_hirano)
    ledger.check("not-g-hirano", not report.g_hirano)
    ledger.check("oracle", g_pi_hirano_oracle(m, tol) is None)


def scalar_shifted_sum(ledger: Ledger, tol: Tolerances) -> None:
    """a = 0, b = 2: I + a^gpiH b = 1 is g-pi-Hirano while a + b = 2 is not, because b is not."""
    a, b = Matrix.scalar(0), Matrix.scalar(2)
    witness = g_pi_hirano(a, tol)
    ledger.check("a-gpih", witness is not None)
    if witness is not None:
        ledger.check("shifted-gpih", classify(Matrix.identity(1) + witness.x @ b, tol).g_pi_hirano)
    ledger.check("sum-not-gpih", not classify(a + b, tol).g_pi_hirano)
    ledger.check("hypothesis-absent", not classify(b, tol).g_pi_hirano)


def _four_by_four_counterexample(ledger: Ledger, tol: Tolerances, a: Matrix, b: Matrix, c: Matrix) -> None:
    bc = b @ c
    ledger.check("a-gpih", classify(a, tol).g_pi_hirano)
    ledger.check("bc-gpih", classify(bc, tol).g_pi_hirano)
    ledger.check("m-not-gpih", not classify(_anti_triangular(a, b, c), tol).g_pi_hirano)
    _kstar_fails(ledger, a, bc, tol)


def acb_zero(ledger: Ledger, tol: Tolerances) -> None:
    """a = E11, b = E12, c = E21: acb = 0 is not enough, M has eigenvalues (1 +- sqrt 5) / 2."""
    a, b, c = _unit(2, 0, 0), _unit(2, 0, 1), _unit(2, 1, 0)
    ledger.check("acb-zero", (a @ c @ b).norm() <= EXACT_TOL)
    _four_by_four_counterexample(ledger, tol, a, b, c)


def cab_zero(ledger: Ledger, tol: Tolerances) -> None:
    """a = [[0, 1], [1, 0]], b = c = E11: cab = 0 is not enough either."""
    a, b, c = Matrix([[0, 1], [1, 0]]), _unit(2, 0, 0), _unit(2, 0, 0)
    ledger.check("cab-zero", (c @ a @ b).norm() <= EXACT_TOL)
    _four_by_four_counterexample(ledger, tol, a, b, c)


def abc_zero(ledger: Ledger, tol: Tolerances) -> None:
    """a = E11, b = E22, c = -E22: abc = 0, so a, bc g-pi-Hirano gives M g-pi-Hirano with witness 4."""
    a, b, c = _unit(2, 0, 0), _unit(2, 1, 1), -_unit(2, 1, 1)
    bc = b @ c
    ledger.check("abc-zero", (a @ bc).norm() <= EXACT_TOL)
    for k in (1, 2, 3):
        ledger.check(f"kstar-holds-{k}", check_word_condition(a, bc, k, WordPattern.STAR_LEFT, tol).holds)
    ledger.check("a-gpih", classify(a, tol).g_pi_hirano)
    ledger.check("bc-gpih", classify(bc, tol).g_pi_hirano)
    report = classify(_anti_triangular(a, b, c), tol)
    ledger.check("m-gpih", report.g_pi_hirano)
    ledger.check("m-witness", report.gpih_witness_n == 4)


def unit_anti_triangular_nilpotent(ledger: Ledger, tol: Tolerances) -> None:
    """a = b = 1, c = 0: M = [[1, 1], [0, 0]] has spectrum {0, 1} and a g-Hirano inverse."""
    m = _anti_triangular(Matrix.identity(1), Matrix.identity(1), Matrix.zero(1))
    report = classify(m, tol)
    ledger.check("g-hirano", g_hirano(m, tol) is not None)
    ledger.check("gs-drazin", report.gs_drazin)
    zero, one = report.spectrum.eigenvalues
    ledger.residual("spectrum", max(abs(zero), abs(one - 1)), ENTRY_TOL)


def diagonal_drazin_sum(ledger: Ledger, tol: Tolerances) -> None:
    """a = diag(2, 0), b = diag(0, 3): ab = ba = 0 and (a + b)^D = diag(1/2, 1/3) = a^D + b^D."""
    a, b = ab_ba_zero_from_blocks(Matrix.scalar(2), Matrix.scalar(3))
    ledger.check("annihilating", annihilates(a, b) and annihilates(b, a))
    expected = Matrix([[0.5, 0], [0, 1 / 3]])
    ledger.residual("sum", _max_entry(drazin(a + b, tol).x - expected), ENTRY_TOL)
    ledger.residual("parts", _max_entry(drazin(a, tol).x + drazin(b, tol).x - expected), ENTRY_TOL)


def jordan_block(ledger: Ledger, tol: Tolerances) -> None:
    """J2 is nilpotent of index 2 with Drazin inverse 0, and is g-pi-Hirano with witness 1."""
    j2 = Matrix([[0, 1], [0, 0]])
    report = classify(j2, tol)
    ledger.check("index", report.drazin_index == 2)
    ledger.check("quasinilpotent", report.quasinilpotent)
    ledger.check("not-group", not report.group_invertible)
    ledger.check("drazin-zero", drazin(j2, tol).x == Matrix.zero(2))
    ledger.check("witness", report.gpih_witness_n == 1)


Fixture = Callable[[Ledger, Tolerances], None]

FIXTURES: Tuple[Tuple[str, Fixture], ...] = (
    ("sixth-root-anti-triangular", sixth_root_anti_triangular),
    ("golden-anti-triangular", golden_anti_triangular),
    ("scalar-shifted-sum", scalar_shifted_sum),
    ("acb-zero", acb_zero),
    ("cab-zero", cab_zero),
    ("abc-zero", abc_zero),
    ("unit-anti-triangular-nilpotent", unit_anti_triangular_nilpotent),
    ("diagonal-drazin-sum", diagonal_drazin_sum),
    ("jordan-block", jordan_block),
)
"""Fixtures in a fixed order; a fixture's position is its seed in reports."""


def run_fixture(index: int, tol: Tolerances) -> TrialReport:
    """Runs one fixture; errors make the trial inconclusive.

    A fixture's report carries its name where generated trials carry an input digest.
    """
    name, fixture = FIXTURES[index]
    ledger = Ledger("fixtures", name)
    try:
        fixture(ledger, tol)
    except GinvError as err:
        logger.warning("fixture %s inconclusive: %s", name, err)
        return TrialReport(
            theorem_id="fixtures", seed=index, digest=name, holds=False, inconclusive=True, detail=str(err)
        )
    report = ledger.report(seed=index)
    if not report.holds:
        logger.debug("fixture %s failed: %s", name, report.detail)
    return report


def run_fixtures(tol: Tolerances) -> SuiteReport:
    """Runs every golden fixture."""
    trials: List[TrialReport] = [run_fixture(index, tol) for index in range(len(FIXTURES))]
    return collect(None, tol, {"fixtures": trials})
