"""The seeded property suite.

Trial i of a theorem runs with seed = suite seed ^ i, and every random choice of the trial comes from
numpy.random.default_rng([seed, crc32(theorem id)]). A trial is therefore reproducible from its
theorem id, its seed and the suite config, whatever order or process it runs in.
"""

import logging
import time
import zlib
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Matrix
from ..conditions import (
    FOREIGN_VALUES,
    PoolKind,
    SpectrumSpec,
    WordPattern,
    gen_ab_ba_zero,
    gen_ab_zero,
    gen_ab_zero_planted,
    gen_anti_triangular,
    gen_k_ast,
    gen_k_star,
    gen_planted_spectrum,
    gen_product_pair,
    polynomial_in,
    random_kind,
    random_pool,
    unity_root,
)
from ..config import SuiteConfig, Tolerances
from ..errors import GinvError
from .common import SuiteReport, TrialReport, collect
from .verifiers import (
    verify_additive_kstar,
    verify_anti_triangular,
    verify_block_triangular,
    verify_drazin_additive,
    verify_drazin_engine,
    verify_existence_equivalences,
    verify_k_ast_properties,
    verify_product_swap,
    verify_qnil_lemmas,
)

logger = logging.getLogger(__name__)

PAIRWISE_FRACTION = 0.2
MAX_ENGINE_INDEX = 3
MAX_UNIT_BLOCK = 5

OUTSIDE_UNIT_VALUES: Tuple[complex, ...] = FOREIGN_VALUES + (1j, unity_root(1, 3))
"""Eigenvalues outside {0, 1, -1}, planted in the c block of [[1, 1], [c, 0]]."""


def _size(rng: np.random.Generator, config: SuiteConfig) -> int:
    return int(config.sizes[int(rng.integers(len(config.sizes)))])


def _word_length(rng: np.random.Generator, config: SuiteConfig) -> int:
    return int(rng.integers(1, config.k_max + 1))


def _planted(rng: np.random.Generator, pool: Tuple[complex, ...], tol: Tolerances) -> Matrix:
    return gen_planted_spectrum(SpectrumSpec(pool), rng, tol)


class Theorem(ABC):
    """A family of results, checked on instances drawn by a generator."""

    theorem_id: str

    @abstractmethod
    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        """Draws one instance and verifies it.

        Args:
            rng: The trial's random generator; the only source of randomness.
            config: The suite config, for sizes and word lengths.
            tol: The tolerances.

        Returns:
            The trial report.

        Raises:
            GinvError: If the trial cannot reach a verdict; the runner records it as inconclusive.
        """


class Existence(Theorem):
    """Spectral, brute-force and pairwise existence criteria agree."""

    theorem_id = "existence"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        a = _planted(rng, random_pool(random_kind(rng), _size(rng, config), rng), tol)
        return verify_existence_equivalences(a, tol, pairwise=rng.random() < PAIRWISE_FRACTION)


class AdditiveKStar(Theorem):
    """Quasinilpotency and g-pi-Hirano membership are additive under the k-star condition."""

    def __init__(self, pattern: WordPattern) -> None:
        self.pattern = pattern
        self.theorem_id = "additive-kstar" if pattern is WordPattern.STAR_LEFT else "additive-kstar-mirror"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        k = _word_length(rng, config)
        shape = rng.random()
        if shape < 0.4:
            a, b = gen_ab_zero_planted(_size(rng, config), rng, tol=tol)
        elif shape < 0.5:
            a, b = gen_ab_zero(_size(rng, config), rng, tol)
        else:
            a, b = gen_k_star(k, rng, tol=tol)
        return verify_additive_kstar(a, b, k, self.pattern, tol)


class DrazinAdditive(Theorem):
    """(a + b)^D = a^D + b^D when ab = ba = 0."""

    theorem_id = "drazin-additive"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        a, b = gen_ab_ba_zero(_size(rng, config), rng, tol)
        return verify_drazin_additive(a, b, tol)


class DrazinEngine(Theorem):
    """The Drazin inverse satisfies its defining identities and matches the pseudo-inverse formula."""

    theorem_id = "drazin-engine"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        n = _size(rng, config)
        zeros = int(rng.integers(0, min(MAX_ENGINE_INDEX, n) + 1))
        kind = PoolKind.UNITY if rng.random() < 0.5 else PoolKind.FOREIGN
        core = tuple(lam if lam != 0 else 1 + 0j for lam in random_pool(kind, n - zeros, rng))
        return verify_drazin_engine(_planted(rng, core + (0j,) * zeros, tol), tol)


class BlockTriangular(Theorem):
    """Block-triangular matrices inherit quasinilpotency and g-pi-Hirano membership from their diagonal."""

    theorem_id = "block-triangular"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        m = max(1, _size(rng, config) // 2)
        a = _planted(rng, random_pool(random_kind(rng), m, rng), tol)
        b = _planted(rng, random_pool(random_kind(rng), m, rng), tol)
        c_off = np.zeros((m, m)) if rng.random() < 0.1 else rng.standard_normal((m, m))
        return verify_block_triangular(a, b, Matrix(c_off), tol)


class KAstProperties(Theorem):
    """Consequences of the k-ast condition, including the unit-shift criterion."""

    def __init__(self, pattern: WordPattern) -> None:
        self.pattern = pattern
        self.theorem_id = "kast-properties" if pattern is WordPattern.AST_LEFT else "kast-properties-mirror"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        k = _word_length(rng, config)
        commuting = rng.random() < 0.5
        qnil_unity = rng.random() < 0.3
        a, b = gen_k_ast(k, rng, commuting, self.pattern, qnil_unity, tol)
        return verify_k_ast_properties(a, b, k, self.pattern, tol)


class AntiTriangularUnit(Theorem):
    """[[1, 1], [c, 0]] has a g-Hirano inverse iff c is nilpotent."""

    theorem_id = "anti-triangular-unit"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        n = min(_size(rng, config), MAX_UNIT_BLOCK)
        pool = [0j] * n
        if rng.random() >= 0.5:
            pool[int(rng.integers(n))] = OUTSIDE_UNIT_VALUES[int(rng.integers(len(OUTSIDE_UNIT_VALUES)))]
        c = _planted(rng, tuple(pool), tol)
        identity = Matrix.identity(n)
        return verify_anti_triangular(identity, identity, c, 1, tol)


class AntiTriangular(Theorem):
    """[[a, b], [c, 0]] is g-pi-Hirano iff a and bc are, when a, bc satisfy the k-star condition."""

    theorem_id = "anti-triangular"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        k = _word_length(rng, config)
        a, b, c = gen_anti_triangular(k, rng, tol)
        return verify_anti_triangular(a, b, c, k, tol, require_kstar=True)


class ProductSwap(Theorem):
    """ab is g-pi-Hirano iff ba is."""

    theorem_id = "product-swap"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        a, b = gen_product_pair(_size(rng, config), rng, tol)
        return verify_product_swap(a, b, tol)


class QnilLemmas(Theorem):
    """Elementary facts on nilpotent matrices, on commuting and on annihilating pairs."""

    theorem_id = "qnil-lemmas"

    def trial(self, rng: np.random.Generator, config: SuiteConfig, tol: Tolerances) -> TrialReport:
        n = _size(rng, config)
        if rng.random() < 0.5:
            kind = PoolKind.NILPOTENT if rng.random() < 0.5 else random_kind(rng)
            m = _planted(rng, random_pool(kind, n, rng), tol)
            p = [0j] + [complex(c) for c in rng.standard_normal(2)]
            q = [complex(rng.standard_normal()) if rng.random() < 0.3 else 0j, 1 + 0j]
            a, b = polynomial_in(m, p), polynomial_in(m, q)
        else:
            kind_a = PoolKind.NILPOTENT if rng.random() < 0.5 else None
            kind_b = PoolKind.NILPOTENT if rng.random() < 0.5 else None
            a, b = gen_ab_zero_planted(n, rng, kind_a, kind_b, tol)
        return verify_qnil_lemmas(a, b, tol)


THEOREMS: Dict[str, Theorem] = {
    theorem.theorem_id: theorem
    for theorem in (
        Existence(),
        AdditiveKStar(WordPattern.STAR_LEFT),
        AdditiveKStar(WordPattern.STAR_RIGHT),
        DrazinAdditive(),
        DrazinEngine(),
        BlockTriangular(),
        KAstProperties(WordPattern.AST_LEFT),
        KAstProperties(WordPattern.AST_RIGHT),
        AntiTriangularUnit(),
        AntiTriangular(),
        ProductSwap(),
        QnilLemmas(),
    )
}


def trial_rng(theorem_id: str, seed: int) -> np.random.Generator:
    """Returns the random generator of one trial."""
    return np.random.default_rng([seed, zlib.crc32(theorem_id.encode("utf-8"))])


def run_trial(theorem_id: str, seed: int, config: SuiteConfig, tol: Tolerances) -> TrialReport:
    """Runs one trial; library errors make it inconclusive rather than a violation.

    Raises:
        ValueError: If the theorem id is unknown.
    """
    if theorem_id not in THEOREMS:
        raise ValueError(f"Unknown theorem: {theorem_id}")
    start = time.perf_counter()
    try:
        report = THEOREMS[theorem_id].trial(trial_rng(theorem_id, seed), config, tol)
    except (GinvError, np.linalg.LinAlgError) as err:
        logger.warning("%s seed %d inconclusive: %s", theorem_id, seed, err)
        report = TrialReport(
            theorem_id=theorem_id,
            seed=seed,
            digest="",
            holds=False,
            inconclusive=True,
            detail=f"{type(err).__name__}: {err}",
        )
    report = replace(report, theorem_id=theorem_id, seed=seed, seconds=time.perf_counter() - start)
    logger.debug("%s seed %d: holds=%s inconclusive=%s", theorem_id, seed, report.holds, report.inconclusive)
    return report


def replay_trial(theorem_id: str, seed: int, config: SuiteConfig, tol: Tolerances) -> TrialReport:
    """Re-executes one trial of an earlier run, e.g. a reported failure, from its theorem id and seed."""
    report = run_trial(theorem_id, seed, config, tol)
    logger.info("replayed %s seed %d: %s", theorem_id, seed, report.detail or "no violations")
    return report


def _run_task(task: Tuple[str, int], config: SuiteConfig, tol: Tolerances) -> TrialReport:
    theorem_id, seed = task
    return run_trial(theorem_id, seed, config, tol)


def run_suite(config: SuiteConfig, tol: Tolerances, theorem_ids: Optional[Sequence[str]] = None) -> SuiteReport:
    """Runs config.trials trials of each theorem.

    Args:
        config: The suite config; with jobs > 1 trials run in worker processes.
        tol: The tolerances.
        theorem_ids: The theorems to run; all of them when None.

    Returns:
        The report, which does not depend on config.jobs.

    Raises:
        ValueError: If a theorem id is unknown.
    """
    ids = sorted(THEOREMS) if theorem_ids is None else sorted(set(theorem_ids))
    unknown = [theorem_id for theorem_id in ids if theorem_id not in THEOREMS]
    if unknown:
        raise ValueError(f"Unknown theorem: {', '.join(unknown)}")

    tasks = [(theorem_id, config.seed ^ i) for theorem_id in ids for i in range(config.trials)]
    run = partial(_run_task, config=config, tol=tol)
    results: List[TrialReport]
    if config.jobs > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (4 * config.jobs))
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            results = list(executor.map(run, tasks, chunksize=chunksize))
    else:
        results = [run(task) for task in tasks]

    by_theorem: Dict[str, List[TrialReport]] = {theorem_id: [] for theorem_id in ids}
    for report in results:
        by_theorem[report.theorem_id].append(report)
    suite = collect(config.seed, tol, by_theorem)
    for summary in suite.theorems:
        logger.info(
            "%s: %d trials, %d violations, %d inconclusive",
            summary.theorem_id,
            summary.trials,
            summary.violations,
            summary.inconclusive,
        )
    return suite
