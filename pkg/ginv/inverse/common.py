"""Common datatypes of the inverse package."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from ..algebra import Matrix, matrix_to_dict
from ..config import Tolerances
from ..errors import GinvError
from ..spectral import Spectrum


class InverseKind(Enum):
    """The generalized inverse classes that can be computed."""

    DRAZIN = 1
    GROUP = 2
    GPI_HIRANO = 3
    GS_DRAZIN = 4
    G_HIRANO = 5

    @classmethod
    def from_str(cls, kind_str: str) -> "InverseKind":
        """Creates an InverseKind from a string.

        Args:
            kind_str: One of "drazin", "group", "gpih", "gsd" or "ghirano".

        Returns:
            The created InverseKind.
        """
        match kind_str:
            case "drazin":
                return cls.DRAZIN
            case "group":
                return cls.GROUP
            case "gpih":
                return cls.GPI_HIRANO
            case "gsd":
                return cls.GS_DRAZIN
            case "ghirano":
                return cls.G_HIRANO
            case _:
                raise ValueError(f"Invalid InverseKind string: {kind_str}")

    def __str__(self) -> str:
        match self:
            case InverseKind.DRAZIN:
                return "drazin"
            case InverseKind.GROUP:
                return "group"
            case InverseKind.GPI_HIRANO:
                return "gpih"
            case InverseKind.GS_DRAZIN:
                return "gsd"
            case InverseKind.G_HIRANO:
                return "ghirano"


@dataclass(frozen=True)
class Residuals:
    """Relative residuals of the defining equations of an inverse.

    Each value is a norm divided by max(1, the magnitude of the terms it was formed from).

    Attributes:
        reflexive: |xax - x|.
        commuting: |ax - xa|.
        nilpotency: Spectral radius of the class-defining expression, e.g. a - a^2 x for the Drazin inverse.
    """

    reflexive: float
    commuting: float
    nilpotency: float

    @property
    def worst(self) -> float:
        """The largest of the three residuals."""
        return max(self.reflexive, self.commuting, self.nilpotency)

    def within(self, tol: Tolerances) -> bool:
        """Whether every residual is at most tol_res."""
        return self.worst <= tol.tol_res

    def to_dict(self) -> Dict[str, float]:
        """Returns the residuals as a JSON-ready dictionary."""
        return {"xax_minus_x": self.reflexive, "ax_minus_xa": self.commuting, "nilpotency": self.nilpotency}


@dataclass(frozen=True)
class InverseWitness:
    """A computed generalized inverse together with the evidence for it.

    Attributes:
        x: The inverse.
        kind: The class the inverse was computed for.
        witness_n: The exponent n with a - a^(n+2) x nilpotent, for g-pi-Hirano inverses.
        drazin_index: The index of a.
        residuals: Relative residuals of the defining equations.
        verified: False when the witness power check was skipped.
    """

    x: Matrix
    kind: InverseKind
    witness_n: Optional[int]
    drazin_index: int
    residuals: Residuals
    verified: bool = True

    def to_dict(self) -> Dict[str, Any]:
        """Returns the witness as a JSON-ready dictionary."""
        return {
            "kind": str(self.kind),
            "x": matrix_to_dict(self.x),
            "witness_n": self.witness_n,
            "drazin_index": self.drazin_index,
            "residuals": self.residuals.to_dict(),
            "verified": self.verified,
        }


@dataclass(frozen=True)
class ClassificationReport:
    """Membership of a matrix in every inverse class, decided from one spectrum.

    Attributes:
        spectrum: The spectrum the flags were read from.
        drazin_index: The index of the matrix.
        invertible: No zero eigenvalue.
        group_invertible: Index at most 1.
        g_drazin: Always true for square matrices.
        gs_drazin: Spectrum within {0, 1}.
        g_hirano: Spectrum within {0, 1, -1}.
        g_pi_hirano: Every nonzero eigenvalue is a root of unity.
        quasinilpotent: Spectrum is {0}.
        gpih_witness_n: The lcm of the unity orders, when g_pi_hirano.
        witness_overflow: The witness exceeds n_oracle * n_max_unity and cannot be checked by powering.
    """

    spectrum: Spectrum
    drazin_index: int
    invertible: bool
    group_invertible: bool
    g_drazin: bool
    gs_drazin: bool
    g_hirano: bool
    g_pi_hirano: bool
    quasinilpotent: bool
    gpih_witness_n: Optional[int]
    witness_overflow: bool = False

    @property
    def flags(self) -> Dict[str, bool]:
        """The membership flags by name."""
        return {
            "invertible": self.invertible,
            "group_invertible": self.group_invertible,
            "g_drazin": self.g_drazin,
            "gs_drazin": self.gs_drazin,
            "g_hirano": self.g_hirano,
            "g_pi_hirano": self.g_pi_hirano,
            "quasinilpotent": self.quasinilpotent,
        }

    def to_dict(self) -> Dict[str, Any]:
        """Returns the report as a JSON-ready dictionary."""
        return {
            "spectrum": self.spectrum.to_dict(),
            "drazin_index": self.drazin_index,
            "flags": self.flags,
            "gpih_witness_n": self.gpih_witness_n,
            "witness_overflow": self.witness_overflow,
        }


class WitnessOverflow(GinvError):
    """Signals that a g-pi-Hirano witness is too large to verify by powering.

    Attributes:
        witness: The inverse, computed but not verified.
    """

    witness: InverseWitness

    def __init__(self, witness: InverseWitness) -> None:
        super().__init__(f"witness exponent {witness.witness_n} is too large to verify")
        self.witness = witness
