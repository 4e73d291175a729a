"""Trial and suite reports, and the ledger verifiers record their legs in."""

import hashlib
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..algebra import Matrix
from ..config import Tolerances

logger = logging.getLogger(__name__)

MAX_INCONCLUSIVE_FRACTION = 0.02


def digest(*matrices: Matrix) -> str:
    """Returns the first 16 hex digits of sha256 over the little-endian complex128 bytes of the inputs.

    >>> digest(Matrix.identity(1))
    '3239b05c38b825eb'
    """
    h = hashlib.sha256()
    for m in matrices:
        h.update(np.ascontiguousarray(m.value, dtype="<c16").tobytes())
    return h.hexdigest()[:16]


def rounded(value: float) -> float:
    """Rounds a residual to three significant digits, so reports do not depend on last-bit rounding."""
    return float(f"{value:.3e}")


@dataclass(frozen=True)
class TrialReport:
    """The outcome of one verifier run.

    Attributes:
        theorem_id: The theorem checked.
        seed: The per-trial seed; with the theorem id and suite config it reproduces the trial.
        digest: Digest of the inputs.
        holds: False iff some leg was violated.
        inconclusive: The trial ended in a numeric or generator error instead of a verdict.
        worst_residual: The largest relative residual measured.
        detail: The violated legs, or the error of an inconclusive trial.
        checked: Legs whose hypotheses held and that were checked.
        not_applicable: Legs skipped because the instance does not satisfy their hypotheses.
        seconds: Wall time of the trial.
    """

    theorem_id: str
    seed: int
    digest: str
    holds: bool
    inconclusive: bool = False
    worst_residual: float = 0.0
    detail: str = ""
    checked: int = 0
    not_applicable: int = 0
    seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Returns the replayable part of the report as a JSON-ready dictionary."""
        return {
            "theorem_id": self.theorem_id,
            "seed": self.seed,
            "digest": self.digest,
            "worst_residual": rounded(self.worst_residual),
            "detail": self.detail,
        }


class Ledger:
    """Collects the legs of one verifier run into a TrialReport.

    >>> ledger = Ledger("demo", "0")
    >>> ledger.agree("same", True, True)
    >>> ledger.implies("skipped", False, False)
    >>> ledger.residual("small", 1e-12, 1e-8)
    >>> report = ledger.report()
    >>> (report.holds, report.checked, report.not_applicable)
    (True, 2, 1)
    """

    def __init__(self, theorem_id: str, inputs_digest: str) -> None:
        self.theorem_id = theorem_id
        self.inputs_digest = inputs_digest
        self.violations: List[str] = []
        self.checked = 0
        self.not_applicable = 0
        self.worst_residual = 0.0

    def check(self, name: str, holds: bool) -> None:
        """Records a leg that must hold."""
        self.checked += 1
        if not holds:
            logger.debug("%s: leg %s violated", self.theorem_id, name)
            self.violations.append(name)

    def agree(self, name: str, left: bool, right: bool) -> None:
        """Records a biconditional leg."""
        self.checked += 1
        if left != right:
            logger.debug("%s: leg %s violated (%s vs %s)", self.theorem_id, name, left, right)
            self.violations.append(f"{name} ({left} vs {right})")

    def implies(self, name: str, hypothesis: bool, conclusion: bool) -> None:
        """Records an implication leg, or skips it when the hypothesis fails."""
        if not hypothesis:
            self.skip(name)
            return
        self.check(name, conclusion)

    def residual(self, name: str, value: float, bound: float) -> None:
        """Records a residual leg, which holds iff value <= bound."""
        self.worst_residual = max(self.worst_residual, value)
        self.checked += 1
        if not value <= bound:
            logger.debug("%s: leg %s residual %.3e above %.3e", self.theorem_id, name, value, bound)
            self.violations.append(f"{name} (residual {value:.3e} > {bound:.3e})")

    def skip(self, name: str) -> None:
        """Records a leg whose hypotheses the instance does not satisfy."""
        logger.debug("%s: leg %s not applicable", self.theorem_id, name)
        self.not_applicable += 1

    def report(self, seed: int = 0) -> TrialReport:
        """Returns the collected legs as a TrialReport."""
        return TrialReport(
            theorem_id=self.theorem_id,
            seed=seed,
            digest=self.inputs_digest,
            holds=not self.violations,
            worst_residual=self.worst_residual,
            detail="; ".join(self.violations),
            checked=self.checked,
            not_applicable=self.not_applicable,
        )


@dataclass(frozen=True)
class TheoremSummary:
    """Aggregated trials of one theorem."""

    theorem_id: str
    trials: int = 0
    violations: int = 0
    inconclusive: int = 0
    not_applicable: int = 0
    worst_residual: float = 0.0
    seconds: float = 0.0

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        """Returns the summary as a JSON-ready dictionary; wall time only when timing is set."""
        d: Dict[str, Any] = {
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "not_applicable": self.not_applicable,
            "worst_residual": rounded(self.worst_residual),
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def summarize(theorem_id: str, trials: List[TrialReport]) -> TheoremSummary:
    """Aggregates the trials of one theorem."""
    return TheoremSummary(
        theorem_id=theorem_id,
        trials=len(trials),
        violations=sum(1 for t in trials if not t.holds and not t.inconclusive),
        inconclusive=sum(1 for t in trials if t.inconclusive),
        not_applicable=sum(t.not_applicable for t in trials),
        worst_residual=max((t.worst_residual for t in trials), default=0.0),
        seconds=sum(t.seconds for t in trials),
    )


@dataclass(frozen=True)
class SuiteReport:
    """The outcome of a suite run.

    Attributes:
        seed: The global seed, or None for fixture-only runs.
        tolerances: The tolerances every trial ran with.
        theorems: One summary per theorem, sorted by theorem id.
        failures: The violating trials, sorted by theorem id and seed.
        inconclusive_trials: The inconclusive trials, sorted the same way.
    """

    seed: Optional[int]
    tolerances: Tolerances
    theorems: Tuple[TheoremSummary, ...] = ()
    failures: Tuple[TrialReport, ...] = ()
    inconclusive_trials: Tuple[TrialReport, ...] = ()

    @property
    def trials(self) -> int:
        """Trials over all theorems."""
        return sum(t.trials for t in self.theorems)

    @property
    def violations(self) -> int:
        """Violations over all theorems."""
        return sum(t.violations for t in self.theorems)

    @property
    def inconclusive(self) -> int:
        """Inconclusive trials over all theorems."""
        return sum(t.inconclusive for t in self.theorems)

    @property
    def passed(self) -> bool:
        """No violations, and at most 2% of the trials inconclusive."""
        return self.violations == 0 and self.inconclusive <= MAX_INCONCLUSIVE_FRACTION * self.trials

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        """Combines two reports run with the same tolerances."""
        return SuiteReport(
            seed=self.seed if self.seed is not None else other.seed,
            tolerances=self.tolerances,
            theorems=tuple(sorted(self.theorems + other.theorems, key=lambda t: t.theorem_id)),
            failures=_sorted_trials(self.failures + other.failures),
            inconclusive_trials=_sorted_trials(self.inconclusive_trials + other.inconclusive_trials),
        )

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        """Returns the report as a JSON-ready dictionary."""
        return {
            "seed": self.seed,
            "tolerances": self.tolerances.to_dict(),
            "passed": self.passed,
            "trials": self.trials,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "theorems": [t.to_dict(timing) for t in self.theorems],
            "failures": [t.to_dict() for t in self.failures],
            "inconclusive_trials": [t.to_dict() for t in self.inconclusive_trials],
        }


def _sorted_trials(trials: Tuple[TrialReport, ...]) -> Tuple[TrialReport, ...]:
    return tuple(sorted(trials, key=lambda t: (t.theorem_id, t.seed)))


def collect(seed: Optional[int], tol: Tolerances, by_theorem: Dict[str, List[TrialReport]]) -> SuiteReport:
    """Builds a SuiteReport from trials grouped by theorem id."""
    every = [t for trials in by_theorem.values() for t in trials]
    return SuiteReport(
        seed=seed,
        tolerances=tol,
        theorems=tuple(summarize(theorem_id, by_theorem[theorem_id]) for theorem_id in sorted(by_theorem)),
        failures=_sorted_trials(tuple(t for t in every if not t.holds and not t.inconclusive)),
        inconclusive_trials=_sorted_trials(tuple(t for t in every if t.inconclusive)),
    )
