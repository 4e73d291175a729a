"""Spectra, numeric rank, Drazin index and quasinilpotency.

The zero eigenvalue is never read off an eigen-solver. Its algebraic multiplicity is n - rank(a^k),
where k is the index found by deflating orthonormal range bases one power at a time. The remaining
eigenvalues are those of the invertible core block on range(a^k). Estimates that a defective block
scatters around one value are merged back into a single multiple eigenvalue, once (C - mu I)^m confirms
that the m estimates near mu account for an m-fold eigenvalue.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, TypeAlias

import numpy as np
import scipy.linalg

from .algebra import Array, Matrix, complex_to_json, mat_power
from .config import Tolerances
from .errors import ConvergenceFailure, NumericAmbiguity

logger = logging.getLogger(__name__)

UnityOrder: TypeAlias = Optional[int]
"""The smallest q with lambda^q = 1 within tolerance, or None."""


@dataclass(frozen=True)
class Spectrum:
    """The eigenvalues of a matrix, with algebraic multiplicity.

    Attributes:
        eigenvalues: All n eigenvalues, sorted by real then imaginary part. Zero eigenvalues are exact zeros.
        index: The Drazin index found while deflating the zero eigenvalue.
    """

    eigenvalues: Tuple[complex, ...]
    index: int

    @property
    def radius(self) -> float:
        """The spectral radius."""
        return max((abs(lam) for lam in self.eigenvalues), default=0.0)

    @property
    def nonzero(self) -> Tuple[complex, ...]:
        """The nonzero eigenvalues, with multiplicity."""
        return tuple(lam for lam in self.eigenvalues if lam != 0)

    @property
    def zero_multiplicity(self) -> int:
        """The algebraic multiplicity of the zero eigenvalue."""
        return len(self.eigenvalues) - len(self.nonzero)

    def to_dict(self) -> Dict[str, Any]:
        """Returns the spectrum as a JSON-ready dictionary."""
        return {"eigenvalues": [complex_to_json(lam) for lam in self.eigenvalues], "index": self.index}


@dataclass(frozen=True)
class CoreNilpotent:
    """The core-nilpotent split of a matrix.

    In the basis [range_basis, null_basis] the matrix is block diagonal, with an invertible block on
    range(a^k) and a nilpotent block on null(a^k).

    Attributes:
        index: k, the Drazin index.
        range_basis: Orthonormal basis of range(a^k), shape (n, r).
        null_basis: Orthonormal basis of null(a^k), shape (n, n - r).
    """

    index: int
    range_basis: Array
    null_basis: Array

    @property
    def rank(self) -> int:
        """rank(a^k)."""
        return int(self.range_basis.shape[1])


def _singular_values(x: Array) -> Array:
    try:
        return scipy.linalg.svdvals(x)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise ConvergenceFailure(f"singular value decomposition failed: {err}") from err


def _cutoff(a: Matrix, tol: Tolerances, scale: Optional[float]) -> float:
    largest = float(_singular_values(a.value)[0])
    return tol.tol_rank * max(largest, scale or 0.0)


def _next_basis(x: Array, basis: Array, cutoff: float) -> Array:
    """Orthonormal basis of range(x @ basis)."""
    if basis.shape[1] == 0:
        return basis
    try:
        u, s, _ = scipy.linalg.svd(x @ basis, full_matrices=False)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise ConvergenceFailure(f"singular value decomposition failed: {err}") from err
    rank = int(np.count_nonzero(s > cutoff))
    return np.ascontiguousarray(u[:, :rank])


def _range_chain(x: Array, cutoff: float) -> List[Array]:
    """Bases of range(x^0), range(x^1), ... up to the first power whose rank repeats."""
    chain = [np.eye(x.shape[0], dtype=np.complex128)]
    while True:
        following = _next_basis(x, chain[-1], cutoff)
        if following.shape[1] == chain[-1].shape[1]:
            return chain
        chain.append(following)


def numeric_rank(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> int:
    """Counts the singular values above tol_rank times the largest one.

    Args:
        a: The matrix.
        tol: The tolerances.
        scale: Optional floor for the reference magnitude, for matrices that are differences of large terms.

    Returns:
        The numeric rank; 0 for the zero matrix.
    """
    values = _singular_values(a.value)
    cutoff = tol.tol_rank * max(float(values[0]), scale or 0.0)
    return int(np.count_nonzero(values > cutoff))


def range_basis(a: Matrix, k: int, tol: Tolerances, scale: Optional[float] = None) -> Array:
    """Returns an orthonormal basis of range(a^k), built one power at a time."""
    cutoff = _cutoff(a, tol, scale)
    basis = np.eye(a.n, dtype=np.complex128)
    for _ in range(k):
        basis = _next_basis(a.value, basis, cutoff)
    return basis


def index(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> int:
    """Returns the smallest k >= 0 with rank(a^k) = rank(a^(k+1)), taking a^0 as the identity."""
    return len(_range_chain(a.value, _cutoff(a, tol, scale))) - 1


def core_nilpotent(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> CoreNilpotent:
    """Splits a into its core and nilpotent parts.

    The null space of a^k is the orthogonal complement of range((a^H)^k), which is deflated the same way
    as range(a^k).

    Raises:
        NumericAmbiguity: If a^k and its adjoint disagree on the rank.
    """
    n = a.n
    cutoff = _cutoff(a, tol, scale)
    chain = _range_chain(a.value, cutoff)
    k = len(chain) - 1
    q = chain[-1]
    rank = q.shape[1]

    if rank == n:
        z = np.zeros((n, 0), dtype=np.complex128)
    elif rank == 0:
        z = np.eye(n, dtype=np.complex128)
    else:
        adjoint = a.value.conj().T
        p = np.eye(n, dtype=np.complex128)
        for _ in range(k):
            p = _next_basis(adjoint, p, cutoff)
        if p.shape[1] != rank:
            raise NumericAmbiguity(f"rank of a^{k} is {rank} but the rank of its adjoint is {p.shape[1]}")
        z = scipy.linalg.null_space(p.conj().T)
        if z.shape[1] != n - rank:
            raise NumericAmbiguity(f"null space of a^{k} has dimension {z.shape[1]}, expected {n - rank}")

    logger.debug("core-nilpotent split: n=%d index=%d rank=%d", n, k, rank)
    return CoreNilpotent(index=k, range_basis=q, null_basis=z)


def _is_multiple(core: Array, mean: complex, size: int, tol: Tolerances) -> bool:
    """Whether (core - mean I)^size has nullity at least size, i.e. the estimates are one multiple eigenvalue."""
    shifted = core - mean * np.eye(core.shape[0], dtype=np.complex128)
    power = np.linalg.matrix_power(shifted, size)
    reference = (float(_singular_values(core)[0]) + abs(mean)) ** size
    nullity = int(np.count_nonzero(_singular_values(power) <= tol.tol_rank * reference))
    return nullity >= size


def _merge_clusters(core: Array, values: List[complex], tol: Tolerances) -> List[complex]:
    """Replaces each single-linkage cluster of estimates by its mean, when the cluster is one multiple eigenvalue.

    Estimates within tol_cluster of each other are only candidates; distinct eigenvalues that happen to be
    close are kept as computed.
    """
    count = len(values)
    parent = list(range(count))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(count):
        for j in range(i + 1, count):
            radius = tol.tol_cluster * max(1.0, abs(values[i]), abs(values[j]))
            if abs(values[i] - values[j]) <= radius:
                parent[find(i)] = find(j)

    groups: Dict[int, List[int]] = {}
    for i in range(count):
        groups.setdefault(find(i), []).append(i)

    merged = list(values)
    for members in groups.values():
        if len(members) < 2:
            continue
        mean = sum((values[i] for i in members), 0j) / len(members)
        if not _is_multiple(core, mean, len(members), tol):
            logger.debug("kept %d distinct eigenvalues near %s", len(members), mean)
            continue
        logger.debug("merged %d eigenvalue estimates into %s", len(members), mean)
        for i in members:
            merged[i] = mean
    return merged


def _core_eigenvalues(a: Array, basis: Array, tol: Tolerances) -> List[complex]:
    if basis.shape[1] == 0:
        return []
    core = basis.conj().T @ a @ basis
    try:
        estimates = scipy.linalg.eigvals(core)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise ConvergenceFailure(f"eigenvalue computation failed: {err}") from err
    if not np.all(np.isfinite(estimates)):
        raise ConvergenceFailure("eigenvalue computation returned non-finite values")
    return _merge_clusters(core, [complex(lam) for lam in estimates], tol)


def cross_check(a: Matrix, eigenvalues: Sequence[complex], tol: Tolerances, scale: Optional[float] = None) -> None:
    """Checks computed eigenvalues against the trace and the determinant of a.

    Deviations are measured against r = max(1, |a|_2, scale): the sum must match within tol_res * n * r
    and the product within tol_res * r^n. The determinant check is skipped when r^n would overflow.

    Raises:
        NumericAmbiguity: If either deviation is too large.
    """
    n = a.n
    reference = max(1.0, float(_singular_values(a.value)[0]), scale or 0.0)
    trace = complex(np.trace(a.value))
    total = sum(eigenvalues, 0j)
    if abs(total - trace) > tol.tol_res * n * reference:
        raise NumericAmbiguity(f"eigenvalue sum {total} deviates from trace {trace}")
    if n * math.log(reference) > 700.0:
        return
    determinant = complex(scipy.linalg.det(a.value))
    product = complex(np.prod(np.array(eigenvalues, dtype=np.complex128)))
    if abs(product - determinant) > tol.tol_res * reference**n:
        raise NumericAmbiguity(f"eigenvalue product {product} deviates from determinant {determinant}")


def spectrum(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> Spectrum:
    """Computes all eigenvalues of a, with multiplicity.

    Args:
        a: The matrix.
        tol: The tolerances.
        scale: Optional floor for the rank threshold.

    Returns:
        The spectrum.

    Raises:
        ConvergenceFailure: If the eigen-solver does not converge.
        NumericAmbiguity: If the eigenvalues fail the trace or determinant check.
    """
    chain = _range_chain(a.value, _cutoff(a, tol, scale))
    core = _core_eigenvalues(a.value, chain[-1], tol)
    eigenvalues = tuple(sorted(core + [0j] * (a.n - len(core)), key=lambda lam: (lam.real, lam.imag)))
    cross_check(a, eigenvalues, tol, scale)
    return Spectrum(eigenvalues=eigenvalues, index=len(chain) - 1)


def spectral_radius(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> float:
    """Returns the largest eigenvalue modulus."""
    return spectrum(a, tol, scale).radius


def is_quasinilpotent(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> bool:
    """Decides whether a is nilpotent, which in finite dimension is quasinilpotency.

    The spectral test (radius at most tol_eig * max(1, |a|, scale)) decides. The normalized power test
    |(a / max(1, |a|))^p| <= tol_res, with p = max(index(a), 1), must agree with it.

    Args:
        a: The matrix.
        tol: The tolerances.
        scale: Optional magnitude of the terms a was formed from; raises both the rank and the spectral
            thresholds to that noise floor.

    Returns:
        Whether a is nilpotent.

    Raises:
        NumericAmbiguity: If the two tests disagree.
    """
    largest = float(_singular_values(a.value)[0])
    spec = spectrum(a, tol, scale)
    spectral = spec.radius <= tol.tol_eig * max(1.0, largest, scale or 0.0)

    exponent = max(spec.index, 1)
    power = mat_power(a.scaled(1.0 / max(1.0, largest)), exponent).norm()
    by_power = power <= tol.tol_res

    if spectral != by_power:
        raise NumericAmbiguity(
            f"spectral test ({'nilpotent' if spectral else 'not nilpotent'}, radius {spec.radius:.3e}) "
            f"disagrees with power test (|a^{exponent}| = {power:.3e})"
        )
    return spectral


def unity_gap(lam: complex, tol: Tolerances) -> float:
    """Returns the smallest |lambda^q - 1| over q = 1..n_max_unity, or inf far from the unit circle."""
    if abs(abs(lam) - 1.0) > 0.5:
        return math.inf
    return min(abs(lam**q - 1) for q in range(1, tol.n_max_unity + 1))


def unity_order(lam: complex, tol: Tolerances) -> UnityOrder:
    """Returns the smallest q <= n_max_unity with |lambda^q - 1| <= tol_unity.

    Returns None when |lambda| is not within tol_unity of 1, or no such q exists.
    """
    if not math.isclose(abs(lam), 1.0, rel_tol=0.0, abs_tol=tol.tol_unity):
        return None
    for q in range(1, tol.n_max_unity + 1):
        if abs(lam**q - 1) <= tol.tol_unity:
            return q
    return None
