"""Dense complex square matrices and their ring operations."""

from enum import Enum
from typing import Iterable, Sequence, Tuple, TypeAlias

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..config import Tolerances
from ..errors import DimensionMismatch, OverflowDetected

Array: TypeAlias = npt.NDArray[np.complex128]


class Matrix:
    """An immutable dense n-by-n complex matrix.

    Attributes:
        value: The entries, as a read-only complex128 array of shape (n, n).
    """

    value: Array

    def __init__(self, value: npt.ArrayLike) -> None:
        array = np.array(value, dtype=np.complex128)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise ValueError(f"Expected a non-empty square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("Matrix entries must be finite")
        array.setflags(write=False)
        self.value = array

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        """Returns the identity of order n."""
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zero(cls, n: int) -> "Matrix":
        """Returns the zero matrix of order n."""
        return cls(np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def scalar(cls, value: complex) -> "Matrix":
        """Returns the 1-by-1 matrix holding a single scalar."""
        return cls([[value]])

    @property
    def n(self) -> int:
        """The order of the matrix."""
        return int(self.value.shape[0])

    def norm(self) -> float:
        """Returns the Frobenius norm."""
        return float(np.linalg.norm(self.value))

    def norm2(self) -> float:
        """Returns the spectral norm (largest singular value)."""
        return float(np.linalg.norm(self.value, 2))

    def conj_transpose(self) -> "Matrix":
        """Returns the conjugate transpose."""
        return Matrix(self.value.conj().T)

    def transpose(self) -> "Matrix":
        """Returns the transpose."""
        return Matrix(self.value.T)

    def scaled(self, factor: complex) -> "Matrix":
        """Returns the matrix multiplied by a scalar."""
        return _checked(self.value * factor)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_order(self, other)
        return _checked(self.value + other.value)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_order(self, other)
        return _checked(self.value - other.value)

    def __neg__(self) -> "Matrix":
        return Matrix(-self.value)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_order(self, other)
        return _checked(self.value @ other.value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return False
        return bool(np.array_equal(self.value, other.value))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Matrix({self.value.tolist()!r})"


def _same_order(*matrices: Matrix) -> None:
    orders = {m.n for m in matrices}
    if len(orders) > 1:
        raise DimensionMismatch(f"Matrix orders differ: {sorted(orders)}")


def _checked(array: Array) -> Matrix:
    if not np.all(np.isfinite(array)):
        raise OverflowDetected("Computation produced a non-finite entry")
    return Matrix(array)


class Letter(Enum):
    """A letter of a word over the alphabet {A, B}."""

    A = 1
    B = 2

    @classmethod
    def from_str(cls, letter_str: str) -> "Letter":
        """Creates a Letter from a string.

        Args:
            letter_str: Either "A" or "B".

        Returns:
            The created Letter.
        """
        match letter_str:
            case "A":
                return cls.A
            case "B":
                return cls.B
            case _:
                raise ValueError(f"Invalid Letter string: {letter_str}")

    def __str__(self) -> str:
        match self:
            case Letter.A:
                return "A"
            case Letter.B:
                return "B"


Word: TypeAlias = Tuple[Letter, ...]


def parse_word(word_str: str) -> Word:
    """Parses a word such as "ABBA".

    Examples:
    >>> format_word(parse_word("ABBA"))
    'ABBA'
    >>> parse_word("")
    ()
    >>> parse_word("AC")
    Traceback (most recent call last):
    ...
    ValueError: Invalid Letter string: C
    """
    return tuple(Letter.from_str(letter) for letter in word_str)


def format_word(word: Iterable[Letter]) -> str:
    """Formats a word as a string of letters."""
    return "".join(str(letter) for letter in word)


def mat_from_blocks2(a11: Matrix, a12: Matrix, a21: Matrix, a22: Matrix) -> Matrix:
    """Builds the 2n-by-2n matrix [[a11, a12], [a21, a22]].

    Args:
        a11: Top-left block.
        a12: Top-right block.
        a21: Bottom-left block.
        a22: Bottom-right block.

    Returns:
        The assembled block matrix.

    Raises:
        DimensionMismatch: If the blocks do not share one order.

    Examples:
    >>> one = Matrix.identity(1)
    >>> mat_from_blocks2(one, one, one.scaled(-1), Matrix.zero(1)).value.real.tolist()
    [[1.0, 1.0], [-1.0, 0.0]]
    """
    _same_order(a11, a12, a21, a22)
    return Matrix(np.block([[a11.value, a12.value], [a21.value, a22.value]]))


def block_diag(*blocks: Matrix) -> Matrix:
    """Builds the block-diagonal matrix of the given blocks."""
    if not blocks:
        raise ValueError("block_diag needs at least one block")
    return Matrix(scipy.linalg.block_diag(*(block.value for block in blocks)))


def word_product(a: Matrix, b: Matrix, word: Sequence[Letter]) -> Matrix:
    """Multiplies out a word over {A, B}, left to right.

    Args:
        a: The matrix substituted for A.
        b: The matrix substituted for B.
        word: The letters; the empty word gives the identity.

    Returns:
        The ordered product.

    Raises:
        DimensionMismatch: If a and b differ in order.
    """
    _same_order(a, b)
    result = Matrix.identity(a.n)
    for letter in word:
        result = result @ (a if letter is Letter.A else b)
    return result


def mat_power(a: Matrix, k: int) -> Matrix:
    """Computes a^k by repeated squaring, with a^0 the identity.

    Raises:
        ValueError: If k is negative.
        OverflowDetected: If an intermediate product is not finite.

    Examples:
    >>> m = Matrix([[1, 1], [-1, 0]])
    >>> mat_power(m, 6) == Matrix.identity(2)
    True
    >>> mat_power(m, 0) == Matrix.identity(2)
    True
    """
    if k < 0:
        raise ValueError(f"Exponent must be non-negative, got {k}")
    result = Matrix.identity(a.n)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def approx_zero(a: Matrix, scale: float, tol: Tolerances) -> bool:
    """Decides whether a matrix vanishes relative to a caller-supplied scale.

    Args:
        a: The matrix to test.
        scale: Typically the product of the norms of the factors that formed a.
        tol: The tolerances; tol_res is used.

    Returns:
        True iff the Frobenius norm of a is at most tol_res * max(scale, 1).
    """
    if scale < 0:
        raise ValueError(f"Scale must be non-negative, got {scale}")
    return a.norm() <= tol.tol_res * max(scale, 1.0)


def relative_residual(a: Matrix, scale: float) -> float:
    """Returns the Frobenius norm of a divided by max(scale, 1)."""
    return a.norm() / max(scale, 1.0)
