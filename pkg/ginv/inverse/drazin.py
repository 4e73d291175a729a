"""Drazin, group and Moore-Penrose inverses."""

import logging
from dataclasses import replace
from typing import Optional

import numpy as np
import scipy.linalg

from ..algebra import Matrix, mat_power, relative_residual
from ..config import Tolerances
from ..errors import ConvergenceFailure, IllConditioned
from ..spectral import core_nilpotent, index, spectral_radius
from .common import InverseKind, InverseWitness, Residuals

logger = logging.getLogger(__name__)


def defining_residuals(a: Matrix, x: Matrix, expression: Matrix, expression_scale: float, tol: Tolerances) -> Residuals:
    """Measures how well x satisfies xax = x, ax = xa and nilpotency of a class-defining expression.

    Args:
        a: The matrix.
        x: The candidate inverse.
        expression: The expression that must be nilpotent, e.g. a - a^2 x.
        expression_scale: The magnitude of the terms the expression was formed from.
        tol: The tolerances.

    Returns:
        The relative residuals.
    """
    norm_a, norm_x = a.norm(), x.norm()
    return Residuals(
        reflexive=relative_residual(x @ a @ x - x, norm_a * norm_x * norm_x + norm_x),
        commuting=relative_residual(a @ x - x @ a, 2.0 * norm_a * norm_x),
        nilpotency=spectral_radius(expression, tol, expression_scale) / max(1.0, expression_scale),
    )


def drazin(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> InverseWitness:
    """Computes the Drazin inverse through the core-nilpotent split.

    With S = [range basis of a^k, null basis of a^k], S^-1 a S = diag(C, N) with C invertible and N
    nilpotent, and the inverse is S diag(C^-1, 0) S^-1.

    Args:
        a: The matrix.
        tol: The tolerances.
        scale: Optional floor for the rank threshold, for matrices formed from larger terms.

    Returns:
        The inverse with its residuals; drazin_index is the index of a.

    Raises:
        IllConditioned: If the condition number of S exceeds cond_max.
    """
    split = core_nilpotent(a, tol, scale)
    rank = split.rank

    if rank == 0:
        x = Matrix.zero(a.n)
    else:
        s = np.hstack([split.range_basis, split.null_basis])
        condition = float(np.linalg.cond(s))
        if not np.isfinite(condition) or condition > tol.cond_max:
            raise IllConditioned(f"core-nilpotent similarity has condition number {condition:.3e}")
        try:
            left = scipy.linalg.inv(s)[:rank, :]
            core = left @ a.value @ split.range_basis
            x = Matrix(split.range_basis @ scipy.linalg.solve(core, left))
        except np.linalg.LinAlgError as err:
            raise IllConditioned(f"core block is numerically singular: {err}") from err
        except ValueError as err:
            raise ConvergenceFailure(f"Drazin inverse is not finite: {err}") from err

    a_squared = a @ a
    residuals = defining_residuals(a, x, a - a_squared @ x, a.norm() + a_squared.norm() * x.norm(), tol)
    if not residuals.within(tol):
        logger.warning("Drazin residuals exceed tol_res: %s", residuals.to_dict())
    return InverseWitness(x=x, kind=InverseKind.DRAZIN, witness_n=None, drazin_index=split.index, residuals=residuals)


def group_inverse(a: Matrix, tol: Tolerances) -> Optional[InverseWitness]:
    """Computes the group inverse, which exists iff the index is at most 1."""
    witness = drazin(a, tol)
    if witness.drazin_index > 1:
        return None
    return replace(witness, kind=InverseKind.GROUP)


def pinv(a: Matrix, tol: Tolerances, scale: Optional[float] = None) -> Matrix:
    """Computes the Moore-Penrose inverse.

    Singular values at or below tol_rank * max(largest singular value) + tol_rank * scale are dropped.

    Raises:
        ConvergenceFailure: If the singular value decomposition fails.
    """
    try:
        result = scipy.linalg.pinv(a.value, atol=tol.tol_rank * (scale or 0.0), rtol=tol.tol_rank)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise ConvergenceFailure(f"pseudo-inverse failed: {err}") from err
    return Matrix(result)


def drazin_by_pinv(a: Matrix, tol: Tolerances) -> Matrix:
    """Computes the Drazin inverse as a^k (a^(2k+1))^+ a^k, with k the index.

    Independent of the core-nilpotent split; used to cross-check 'drazin'.
    """
    k = index(a, tol)
    a_k = mat_power(a, k)
    a_odd = mat_power(a, 2 * k + 1)
    return a_k @ pinv(a_odd, tol, scale=a.norm2() ** (2 * k + 1)) @ a_k
