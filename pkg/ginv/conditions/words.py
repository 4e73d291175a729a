"""Word conditions on pairs of matrices.

For a word w of length k over {a, b}:

  kstar     ab w = 0          kstar-r   w ab = 0
  kast      w ab = w ba       kast-r    ab w = ba w

Every one of the 2^k words is multiplied out, so checking is exact up to rounding.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple

from ..algebra import Letter, Matrix, Word, format_word
from ..config import Tolerances
from ..errors import DimensionMismatch, KTooLarge

logger = logging.getLogger(__name__)

MAX_WORD_LENGTH = 12


class WordPattern(Enum):
    """Which word condition to check."""

    STAR_LEFT = 1
    STAR_RIGHT = 2
    AST_LEFT = 3
    AST_RIGHT = 4

    @classmethod
    def from_str(cls, pattern_str: str) -> "WordPattern":
        """Creates a WordPattern from a string.

        Args:
            pattern_str: One of "kstar", "kstar-r", "kast" or "kast-r".

        Returns:
            The created WordPattern.
        """
        match pattern_str:
            case "kstar":
                return cls.STAR_LEFT
            case "kstar-r":
                return cls.STAR_RIGHT
            case "kast":
                return cls.AST_LEFT
            case "kast-r":
                return cls.AST_RIGHT
            case _:
                raise ValueError(f"Invalid WordPattern string: {pattern_str}")

    def __str__(self) -> str:
        match self:
            case WordPattern.STAR_LEFT:
                return "kstar"
            case WordPattern.STAR_RIGHT:
                return "kstar-r"
            case WordPattern.AST_LEFT:
                return "kast"
            case WordPattern.AST_RIGHT:
                return "kast-r"

    @property
    def word_on_left(self) -> bool:
        """Whether the word multiplies the seed product from the left."""
        return self in (WordPattern.STAR_RIGHT, WordPattern.AST_LEFT)


@dataclass(frozen=True)
class ConditionReport:
    """The outcome of checking a word condition.

    Attributes:
        pattern: The condition checked.
        k: The word length.
        holds: Whether every word satisfied the identity within tol_res.
        worst_residual: The largest relative residual over all words.
        worst_word: The first word attaining it.
    """

    pattern: WordPattern
    k: int
    holds: bool
    worst_residual: float
    worst_word: Word

    def to_dict(self) -> Dict[str, Any]:
        """Returns the report as a JSON-ready dictionary."""
        return {
            "pattern": str(self.pattern),
            "k": self.k,
            "holds": self.holds,
            "worst_residual": self.worst_residual,
            "worst_word": format_word(self.worst_word),
        }


def check_word_condition(a: Matrix, b: Matrix, k: int, pattern: WordPattern, tol: Tolerances) -> ConditionReport:
    """Checks a word condition for every word of length k.

    Each residual is the Frobenius norm of (ab w), (w ab), (w (ab - ba)) or ((ab - ba) w), divided by
    max(1, product of the factor norms).

    Args:
        a: The first matrix.
        b: The second matrix.
        k: The word length.
        pattern: Which condition to check.
        tol: The tolerances.

    Returns:
        The report; holds iff worst_residual <= tol_res.

    Raises:
        DimensionMismatch: If a and b differ in order.
        KTooLarge: If k exceeds 12.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"Matrix orders differ: {a.n} and {b.n}")
    if k < 1:
        raise ValueError(f"Word length must be positive, got {k}")
    if k > MAX_WORD_LENGTH:
        raise KTooLarge(f"Word length {k} exceeds {MAX_WORD_LENGTH}")

    norm_a, norm_b = a.norm(), b.norm()
    if pattern in (WordPattern.STAR_LEFT, WordPattern.STAR_RIGHT):
        seed = a @ b
        seed_scale = norm_a * norm_b
    else:
        seed = a @ b - b @ a
        seed_scale = 2.0 * norm_a * norm_b

    factors = {Letter.A: (a, norm_a), Letter.B: (b, norm_b)}
    layer: List[Tuple[Word, Matrix, float]] = [((), seed, seed_scale)]
    for _ in range(k):
        following: List[Tuple[Word, Matrix, float]] = []
        for word, product, scale in layer:
            for letter in (Letter.A, Letter.B):
                factor, norm = factors[letter]
                if pattern.word_on_left:
                    following.append(((letter,) + word, factor @ product, scale * norm))
                else:
                    following.append((word + (letter,), product @ factor, scale * norm))
        layer = following

    worst_residual = -1.0
    worst_word: Word = ()
    for word, product, scale in layer:
        residual = product.norm() / max(scale, 1.0)
        if residual > worst_residual:
            worst_residual, worst_word = residual, word

    holds = worst_residual <= tol.tol_res
    logger.debug("%s k=%d holds=%s worst=%.3e at %s", pattern, k, holds, worst_residual, format_word(worst_word))
    return ConditionReport(pattern=pattern, k=k, holds=holds, worst_residual=worst_residual, worst_word=worst_word)
