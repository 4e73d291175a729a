"""Common code for tests."""

import math
from typing import Dict, TypedDict

import numpy as np

from ginv.algebra import Matrix


class ClassifyCase(TypedDict):
    """Type hint class for classification tables."""

    matrix: Matrix
    flags: Dict[str, bool]


def max_entry(m: Matrix) -> float:
    """The largest entry modulus."""
    return float(np.max(np.abs(m.value)))


def similar(t: Matrix, seed: int) -> Matrix:
    """Conjugates t by a fixed, well-conditioned random similarity."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((t.n, t.n)) + 1j * rng.standard_normal((t.n, t.n)))
    s = q @ np.diag(np.linspace(1.0, 2.0, t.n))
    return Matrix(s @ t.value @ np.linalg.inv(s))


def random_matrix(rng: np.random.Generator, n: int) -> Matrix:
    """Draws a complex Gaussian matrix with entries of variance 1 / n."""
    return Matrix((rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2 * n))
