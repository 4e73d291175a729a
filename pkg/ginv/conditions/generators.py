"""Structured random generators.

Unstructured random pairs satisfy annihilation and word conditions with probability zero, so every
generator here plants the structure in a triangular or block form, conjugates by a random
well-conditioned similarity, and then checks its own output before returning it. A generator that
cannot meet its contract within MAX_ATTEMPTS draws raises GeneratorFailure.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from ..algebra import Array, Matrix, block_diag
from ..config import Tolerances
from ..errors import ConditioningRejected, GeneratorFailure
from ..inverse import pinv
from ..spectral import spectrum
from .words import WordPattern, check_word_condition

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 8
MAX_SIMILARITY_COND = 1e4
ANNIHILATION_TOL = 1e-12
DEGENERATE_PROBABILITY = 0.05
MAX_UNITY_ORDER = 12
MAX_REPEATS = 3
ZERO_PROBABILITY = 0.25

FOREIGN_VALUES: Tuple[complex, ...] = (2.0 + 0j, -1.5 + 0j, 1.25 + 0j, 1.5j, cmath.exp(1j), -2.0 + 0.5j)
"""Nonzero eigenvalues that are not roots of unity, all of modulus at least 1."""

UNIT_SCALARS: Tuple[complex, ...] = (1 + 0j, -1 + 0j, 1j, -1j)

Pair = Tuple[Matrix, Matrix]


class PoolKind(Enum):
    """The kind of eigenvalue pool to draw."""

    NILPOTENT = 1
    UNITY = 2
    MIXED = 3
    FOREIGN = 4


@dataclass(frozen=True)
class SpectrumSpec:
    """What to plant in a random matrix.

    Attributes:
        pool: The eigenvalues, with multiplicity; its length is the order of the matrix.
        cond_bound: Largest condition number of the similarity applied to the triangular form.
        fill: Magnitude of the random strictly-upper entries of the triangular form.
    """

    pool: Tuple[complex, ...]
    cond_bound: float = 8.0
    fill: float = 0.5

    def __post_init__(self) -> None:
        if len(self.pool) < 1:
            raise ValueError("pool must hold at least one eigenvalue")
        if not self.cond_bound >= 1.0:
            raise ValueError(f"cond_bound must be at least 1, got {self.cond_bound}")
        if self.fill < 0:
            raise ValueError(f"fill must be non-negative, got {self.fill}")

    @property
    def size(self) -> int:
        """The order of the generated matrix."""
        return len(self.pool)


def unity_root(p: int, q: int) -> complex:
    """Returns exp(2 pi i p / q)."""
    if p % q == 0:
        return 1 + 0j
    return complex(cmath.exp(2j * math.pi * p / q))


def _limited_draws(
    candidates: Sequence[complex], size: int, rng: np.random.Generator, zeros: bool
) -> List[complex]:
    counts = [0] * len(candidates)
    drawn: List[complex] = []
    for _ in range(size):
        open_slots = [i for i, count in enumerate(counts) if count < MAX_REPEATS]
        if (zeros and rng.random() < ZERO_PROBABILITY) or not open_slots:
            drawn.append(0j)
            continue
        choice = open_slots[int(rng.integers(len(open_slots)))]
        counts[choice] += 1
        drawn.append(candidates[choice])
    return drawn


def random_pool(kind: PoolKind, size: int, rng: np.random.Generator) -> Tuple[complex, ...]:
    """Draws an eigenvalue pool.

    Unity pools take their roots from the divisors of a single order m <= 12, so the lcm of their
    orders is at most 12. No value repeats more than MAX_REPEATS times; the surplus becomes zeros.
    Mixed pools are unity pools with one entry replaced by a foreign value.
    """
    match kind:
        case PoolKind.NILPOTENT:
            return (0j,) * size
        case PoolKind.UNITY:
            order = int(rng.integers(1, MAX_UNITY_ORDER + 1))
            roots = [unity_root(p, order) for p in range(order)]
            return tuple(_limited_draws(roots, size, rng, zeros=True))
        case PoolKind.MIXED:
            pool = list(random_pool(PoolKind.UNITY, size, rng))
            pool[int(rng.integers(size))] = FOREIGN_VALUES[int(rng.integers(len(FOREIGN_VALUES)))]
            return tuple(pool)
        case PoolKind.FOREIGN:
            return tuple(_limited_draws(FOREIGN_VALUES, size, rng, zeros=False))


def random_kind(rng: np.random.Generator) -> PoolKind:
    """Picks a pool kind, favouring unity pools."""
    kinds = [PoolKind.UNITY, PoolKind.NILPOTENT, PoolKind.MIXED, PoolKind.FOREIGN]
    return kinds[int(rng.choice(len(kinds), p=[0.4, 0.2, 0.25, 0.15]))]


def _random_complex(rng: np.random.Generator, rows: int, cols: int) -> Array:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2.0)


def _strictly_upper(rng: np.random.Generator, size: int, fill: float = 0.5) -> Array:
    entries = fill * (rng.uniform(-1.0, 1.0, (size, size)) + 1j * rng.uniform(-1.0, 1.0, (size, size)))
    return np.triu(entries, 1)


def _triangular(rng: np.random.Generator, diagonal: Sequence[complex], fill: float = 0.5) -> Array:
    return _strictly_upper(rng, len(diagonal), fill) + np.diag(np.asarray(diagonal, dtype=np.complex128))


def random_similarity(n: int, rng: np.random.Generator, cond_bound: float = 8.0) -> Array:
    """Draws S = U diag(s) V^H with Haar unitary U, V and s log-uniform in [1, cond_bound].

    Raises:
        ConditioningRejected: If no draw within MAX_ATTEMPTS has condition number at most
            min(cond_bound, MAX_SIMILARITY_COND) after rounding.
    """
    if n == 1:
        return np.array([[cmath.exp(2j * math.pi * rng.random())]], dtype=np.complex128)
    limit = min(cond_bound, MAX_SIMILARITY_COND) * (1.0 + 1e-9)
    condition = math.inf
    for _ in range(MAX_ATTEMPTS):
        u = unitary_group.rvs(n, random_state=rng)
        v = unitary_group.rvs(n, random_state=rng)
        singular = np.exp(rng.uniform(0.0, math.log(cond_bound), n))
        s = (u * singular) @ v.conj().T
        condition = float(np.linalg.cond(s))
        if condition <= limit:
            return np.asarray(s, dtype=np.complex128)
    raise ConditioningRejected(f"similarity condition number {condition:.3e} exceeds {limit:.3e}")


def _conjugate(s: Array, *blocks: Array) -> Tuple[Matrix, ...]:
    s_inv = scipy.linalg.inv(s)
    return tuple(Matrix(s @ block @ s_inv) for block in blocks)


def annihilates(a: Matrix, b: Matrix, tol: float = ANNIHILATION_TOL) -> bool:
    """Whether |ab| <= tol * |a| |b|."""
    return (a @ b).norm() <= tol * a.norm() * b.norm()


def matches_pool(a: Matrix, pool: Sequence[complex], tol: Tolerances) -> bool:
    """Whether the computed spectrum of a matches a planted pool within tol_unity * max(1, |a|)."""
    computed = list(spectrum(a, tol).eigenvalues)
    radius = tol.tol_unity * max(1.0, a.norm())
    for planted in sorted(pool, key=abs, reverse=True):
        distances = [abs(planted - lam) for lam in computed]
        nearest = int(np.argmin(distances))
        if distances[nearest] > radius:
            return False
        computed.pop(nearest)
    return True


def gen_planted_spectrum(spec: SpectrumSpec, rng: np.random.Generator, tol: Tolerances = Tolerances()) -> Matrix:
    """Draws S T S^-1 with T upper triangular, diag(T) the pool, and random strictly-upper fill.

    Raises:
        ConditioningRejected: See 'random_similarity'.
        GeneratorFailure: If the computed spectrum keeps missing the pool.
    """
    for _ in range(MAX_ATTEMPTS):
        t = _triangular(rng, spec.pool, spec.fill)
        (a,) = _conjugate(random_similarity(spec.size, rng, spec.cond_bound), t)
        if matches_pool(a, spec.pool, tol):
            return a
        logger.debug("planted spectrum %s not recovered, resampling", spec.pool)
    raise GeneratorFailure(f"could not plant spectrum {spec.pool}")


def polynomial_in(m: Matrix, coefficients: Sequence[complex]) -> Matrix:
    """Evaluates c0 I + c1 m + c2 m^2 + ... by Horner's rule."""
    identity = Matrix.identity(m.n)
    result = Matrix.zero(m.n)
    for coefficient in reversed(coefficients):
        result = result @ m + identity.scaled(coefficient)
    return result


def gen_ab_zero(n: int, rng: np.random.Generator, tol: Tolerances = Tolerances()) -> Pair:
    """Draws (a, b) with ab = 0 as a = c (I - b b^+) for random c and random low-rank b.

    With small probability b is invertible and a = 0.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    for _ in range(MAX_ATTEMPTS):
        rank = n if rng.random() < DEGENERATE_PROBABILITY else int(rng.integers(1, n))
        b = Matrix(_random_complex(rng, n, rank) @ _random_complex(rng, rank, n))
        c = _random_complex(rng, n, n)
        a = Matrix(c @ (np.eye(n) - b.value @ pinv(b, tol).value))
        if rank == n:
            a = Matrix.zero(n)
        if annihilates(a, b):
            return a, b
        logger.debug("ab = 0 draw failed its check, resampling")
    raise GeneratorFailure("could not draw a pair with ab = 0")


def gen_ab_zero_planted(
    n: int,
    rng: np.random.Generator,
    kind_a: Optional[PoolKind] = None,
    kind_b: Optional[PoolKind] = None,
    tol: Tolerances = Tolerances(),
) -> Pair:
    """Draws (a, b) with ab = 0 and planted spectra for both factors.

    a = S [[0, X], [0, A]] S^-1 and b = S [[B, Y], [0, 0]] S^-1 with A, B triangular from the pools.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    for _ in range(MAX_ATTEMPTS):
        split = int(rng.integers(1, n))
        block_a = _triangular(rng, random_pool(kind_a or random_kind(rng), n - split, rng))
        block_b = _triangular(rng, random_pool(kind_b or random_kind(rng), split, rng))
        x = _random_complex(rng, split, n - split)
        y = _random_complex(rng, split, n - split)
        zero_top = np.zeros((split, split), dtype=np.complex128)
        zero_bottom = np.zeros((n - split, n - split), dtype=np.complex128)
        zero_left = np.zeros((n - split, split), dtype=np.complex128)
        t_a = np.block([[zero_top, x], [zero_left, block_a]])
        t_b = np.block([[block_b, y], [zero_left, zero_bottom]])
        a, b = _conjugate(random_similarity(n, rng), t_a, t_b)
        if annihilates(a, b):
            return a, b
    raise GeneratorFailure("could not draw a planted pair with ab = 0")


def ab_ba_zero_from_blocks(a1: Matrix, b2: Matrix, s: Optional[Matrix] = None) -> Pair:
    """Builds a = S diag(a1, 0) S^-1 and b = S diag(0, b2) S^-1, so that ab = ba = 0."""
    t_a = block_diag(a1, Matrix.zero(b2.n)).value
    t_b = block_diag(Matrix.zero(a1.n), b2).value
    if s is None:
        return Matrix(t_a), Matrix(t_b)
    a, b = _conjugate(s.value, t_a, t_b)
    return a, b


def gen_ab_ba_zero(n: int, rng: np.random.Generator, tol: Tolerances = Tolerances()) -> Pair:
    """Draws (a, b) with ab = ba = 0 from disjoint diagonal blocks under a random similarity."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    for _ in range(MAX_ATTEMPTS):
        split = int(rng.integers(1, n))
        a1 = Matrix(_triangular(rng, random_pool(random_kind(rng), split, rng)))
        b2 = Matrix(_triangular(rng, random_pool(random_kind(rng), n - split, rng)))
        if rng.random() < DEGENERATE_PROBABILITY:
            a1 = Matrix.zero(split)
        a, b = ab_ba_zero_from_blocks(a1, b2, Matrix(random_similarity(n, rng)))
        if annihilates(a, b) and annihilates(b, a):
            return a, b
    raise GeneratorFailure("could not draw a pair with ab = ba = 0")


def _small_pool(rng: np.random.Generator, width: int) -> Tuple[complex, ...]:
    return random_pool(random_kind(rng), int(rng.integers(1, width + 1)), rng)


def gen_k_star(
    k: int,
    rng: np.random.Generator,
    pool_a: Optional[Sequence[complex]] = None,
    pool_b: Optional[Sequence[complex]] = None,
    tol: Tolerances = Tolerances(),
) -> Pair:
    """Draws (a, b) satisfying ab w = 0 and w ab = 0 for every word w of length k, with ab nonzero.

    a = S diag(D_a, 0, U_a) S^-1 and b = S diag(0, D_b, U_b) S^-1, with U_a, U_b strictly upper
    triangular of size k + 2: any product of ab with k more factors holds k + 2 strictly upper factors
    in its last block and vanishes.

    Args:
        k: The word length, 1..4.
        rng: The random generator.
        pool_a: Eigenvalues planted in D_a; drawn at random (one or two values) when None.
        pool_b: Eigenvalues planted in D_b; drawn at random when None.
        tol: The tolerances.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"k must lie in 1..4, got {k}")
    # keeps the order at most 8
    width = 2 if k <= 2 else 1
    for _ in range(MAX_ATTEMPTS):
        diag_a = tuple(pool_a) if pool_a is not None else _small_pool(rng, width)
        diag_b = tuple(pool_b) if pool_b is not None else _small_pool(rng, width)
        p, q, m = len(diag_a), len(diag_b), k + 2
        t_a = scipy.linalg.block_diag(_triangular(rng, diag_a), np.zeros((q, q)), _strictly_upper(rng, m))
        t_b = scipy.linalg.block_diag(np.zeros((p, p)), _triangular(rng, diag_b), _strictly_upper(rng, m))
        a, b = _conjugate(random_similarity(p + q + m, rng), t_a, t_b)
        left = check_word_condition(a, b, k, WordPattern.STAR_LEFT, tol)
        right = check_word_condition(a, b, k, WordPattern.STAR_RIGHT, tol)
        if left.holds and right.holds:
            return a, b
        worst = max(left.worst_residual, right.worst_residual)
        logger.debug("k-star draw failed its check (worst %.3e), resampling", worst)
    raise GeneratorFailure(f"could not draw a pair satisfying the {k}-star condition")


def _random_coefficients(rng: np.random.Generator, constant: Optional[complex] = None) -> List[complex]:
    """A random polynomial of degree <= 3.

    constant=None picks one of three families: a unit monomial, random coefficients with no constant
    term, or fully random coefficients.
    """
    if constant is not None:
        tail = _random_complex(rng, 1, 3)[0]
        return [constant] + [complex(c) for c in tail]
    family = int(rng.integers(3))
    if family == 0:
        coefficients = [0j] * 4
        coefficients[int(rng.integers(1, 4))] = UNIT_SCALARS[int(rng.integers(len(UNIT_SCALARS)))]
        return coefficients
    values = [complex(c) for c in _random_complex(rng, 1, 4)[0]]
    if family == 1:
        values[0] = 0j
    return values


def gen_k_ast(
    k: int,
    rng: np.random.Generator,
    commuting: bool,
    pattern: WordPattern = WordPattern.AST_LEFT,
    qnil_unity: bool = False,
    tol: Tolerances = Tolerances(),
) -> Pair:
    """Draws (a, b) satisfying w ab = w ba (or ab w = ba w) for every word w of length k.

    commuting=True gives a = p(m), b = q(m) for a planted m and polynomials of degree <= 3.
    commuting=False gives the block upper-triangular pair a = [[A, X], [0, A']], b = [[B, Y], [0, B']]
    with A, B strictly upper triangular of size k and A' = p(m0), B' = q(m0) commuting; the transpose
    of such a pair serves the mirrored pattern.

    Args:
        k: The word length, 1..4.
        rng: The random generator.
        commuting: Which construction to use.
        pattern: AST_LEFT or AST_RIGHT.
        qnil_unity: Plant a nilpotent a and a b whose nonzero spectrum is one root of unity.
        tol: The tolerances.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"k must lie in 1..4, got {k}")
    if pattern not in (WordPattern.AST_LEFT, WordPattern.AST_RIGHT):
        raise ValueError(f"pattern must be kast or kast-r, got {pattern}")

    for _ in range(MAX_ATTEMPTS):
        kind = PoolKind.NILPOTENT if qnil_unity else random_kind(rng)
        if qnil_unity:
            p = _random_coefficients(rng, constant=0j)
            q = _random_coefficients(rng, constant=UNIT_SCALARS[int(rng.integers(len(UNIT_SCALARS)))])
        else:
            p, q = _random_coefficients(rng), _random_coefficients(rng)

        if commuting:
            size = int(rng.integers(2, 6))
            m = gen_planted_spectrum(SpectrumSpec(random_pool(kind, size, rng)), rng, tol)
            a, b = polynomial_in(m, p), polynomial_in(m, q)
        else:
            size = int(rng.integers(1, 4))
            m0 = Matrix(_triangular(rng, random_pool(kind, size, rng)))
            lower_left = np.zeros((size, k), dtype=np.complex128)
            t_a = np.block(
                [
                    [_strictly_upper(rng, k), _random_complex(rng, k, size)],
                    [lower_left, polynomial_in(m0, p).value],
                ]
            )
            t_b = np.block(
                [
                    [_strictly_upper(rng, k), _random_complex(rng, k, size)],
                    [lower_left, polynomial_in(m0, q).value],
                ]
            )
            a, b = _conjugate(random_similarity(k + size, rng), t_a, t_b)

        if pattern is WordPattern.AST_RIGHT:
            a, b = a.transpose(), b.transpose()
        if check_word_condition(a, b, k, pattern, tol).holds:
            return a, b
        logger.debug("k-ast draw failed its check, resampling")
    raise GeneratorFailure(f"could not draw a pair satisfying the {k}-ast condition")


def gen_product_pair(n: int, rng: np.random.Generator, tol: Tolerances = Tolerances()) -> Pair:
    """Draws (a, b) for comparing ab with ba.

    One of four shapes: ab planted (a = T b^-1), both factors planted, a planted with b of lower rank,
    or b a power of a.
    """
    shape = int(rng.integers(4))
    spec = SpectrumSpec(random_pool(random_kind(rng), n, rng))
    if shape == 0:
        target = gen_planted_spectrum(spec, rng, tol)
        b = random_similarity(n, rng)
        return Matrix(target.value @ scipy.linalg.inv(b)), Matrix(b)
    a = gen_planted_spectrum(spec, rng, tol)
    if shape == 1:
        return a, gen_planted_spectrum(SpectrumSpec(random_pool(random_kind(rng), n, rng)), rng, tol)
    if shape == 2:
        rank = int(rng.integers(1, n))
        return a, Matrix(_random_complex(rng, n, rank) @ _random_complex(rng, rank, n))
    return a, polynomial_in(a, [0j] * int(rng.integers(1, 3)) + [1 + 0j])


def gen_anti_triangular(
    k: int, rng: np.random.Generator, tol: Tolerances = Tolerances()
) -> Tuple[Matrix, Matrix, Matrix]:
    """Draws (a, b, c) such that a and bc satisfy the k-star condition in one order or the other.

    A k-star pair (x, y) is drawn; c is a random invertible matrix and b = d c^-1 where d is whichever
    of x, y is not a, so that bc = d.
    """
    x, y = gen_k_star(k, rng, tol=tol)
    a, d = (x, y) if rng.random() < 0.5 else (y, x)
    c = random_similarity(a.n, rng)
    b = Matrix(d.value @ scipy.linalg.inv(c))
    return a, b, Matrix(c)


GeneratorFn = Callable[[int, int, np.random.Generator, Tolerances], Tuple[Matrix, ...]]


def _planted(n: int, _k: int, rng: np.random.Generator, tol: Tolerances) -> Tuple[Matrix, ...]:
    return (gen_planted_spectrum(SpectrumSpec(random_pool(random_kind(rng), n, rng)), rng, tol),)


GENERATORS: Dict[str, GeneratorFn] = {
    "planted-spectrum": _planted,
    "ab-zero": lambda n, _k, rng, tol: gen_ab_zero(n, rng, tol),
    "ab-zero-planted": lambda n, _k, rng, tol: gen_ab_zero_planted(n, rng, tol=tol),
    "ab-ba-zero": lambda n, _k, rng, tol: gen_ab_ba_zero(n, rng, tol),
    "k-star": lambda _n, k, rng, tol: gen_k_star(k, rng, tol=tol),
    "k-ast": lambda _n, k, rng, tol: gen_k_ast(k, rng, commuting=False, tol=tol),
    "k-ast-commuting": lambda _n, k, rng, tol: gen_k_ast(k, rng, commuting=True, tol=tol),
    "product-pair": lambda n, _k, rng, tol: gen_product_pair(n, rng, tol),
    "anti-triangular": lambda _n, k, rng, tol: gen_anti_triangular(k, rng, tol),
}
"""Generators by name, each called as (n, k, rng, tol). Generators that ignore n or k say so by name."""
