"""Spectral classification and the g-pi-Hirano, gs-Drazin and g-Hirano inverses.

Each of these classes is a spectral condition on top of the Drazin inverse: the inverse value is always
the Drazin inverse, and membership depends only on which nonzero eigenvalues occur.

  gs-Drazin       every nonzero eigenvalue is 1
  g-Hirano        every nonzero eigenvalue is 1 or -1
  g-pi-Hirano     every nonzero eigenvalue is a root of unity; witness n = lcm of the orders
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

from ..algebra import Matrix, mat_power
from ..config import Tolerances
from ..errors import NumericAmbiguity
from ..spectral import is_quasinilpotent, spectral_radius, spectrum, unity_gap, unity_order
from .common import ClassificationReport, InverseKind, InverseWitness, Residuals, WitnessOverflow
from .drazin import drazin, group_inverse

logger = logging.getLogger(__name__)

AMBIGUITY_FACTOR = 10.0
"""Eigenvalues that miss every root of unity by less than this many tol_unity are ambiguous."""


def classify(a: Matrix, tol: Tolerances) -> ClassificationReport:
    """Classifies a into every inverse class from a single spectrum.

    Core eigenvalues of modulus at most tol_eig * max(1, |a|_2) count as zero, as in the spectral
    quasinilpotency test; a matrix of rounding noise is therefore nilpotent rather than ambiguous.

    Never raises WitnessOverflow; a witness too large to verify is flagged instead.

    Raises:
        NumericAmbiguity: If an eigenvalue cannot be told apart from zero or from a root of unity.
    """
    spec = spectrum(a, tol)
    floor = tol.tol_eig * max(1.0, a.norm2())
    nonzero = [lam for lam in spec.nonzero if abs(lam) > floor]
    if len(nonzero) < len(spec.nonzero):
        logger.debug("%d eigenvalues below %.3e count as zero", len(spec.nonzero) - len(nonzero), floor)

    orders: List[int] = []
    for lam in nonzero:
        if abs(lam) <= tol.tol_unity:
            raise NumericAmbiguity(f"eigenvalue {lam} is within tol_unity of zero")
        order = unity_order(lam, tol)
        if order is not None:
            orders.append(order)
            continue
        gap = unity_gap(lam, tol)
        if gap <= AMBIGUITY_FACTOR * tol.tol_unity:
            raise NumericAmbiguity(f"eigenvalue {lam} misses a root of unity by only {gap:.3e}")

    g_pi_hirano = len(orders) == len(nonzero)
    witness_n = math.lcm(*orders) if g_pi_hirano and orders else (1 if g_pi_hirano else None)
    overflow = witness_n is not None and witness_n > tol.n_oracle * tol.n_max_unity
    if overflow:
        logger.info("witness exponent %d exceeds the verification bound", witness_n)

    return ClassificationReport(
        spectrum=spec,
        drazin_index=spec.index,
        invertible=len(nonzero) == a.n,
        group_invertible=spec.index <= 1,
        g_drazin=True,
        gs_drazin=g_pi_hirano and all(order == 1 for order in orders),
        g_hirano=g_pi_hirano and all(order <= 2 for order in orders),
        g_pi_hirano=g_pi_hirano,
        quasinilpotent=not nonzero,
        gpih_witness_n=witness_n,
        witness_overflow=overflow,
    )


def _class_witness(
    a: Matrix,
    tol: Tolerances,
    kind: InverseKind,
    expression: Callable[[Matrix, Matrix], Tuple[Matrix, float]],
) -> InverseWitness:
    base = drazin(a, tol)
    term, scale = expression(a, base.x)
    residuals = Residuals(
        reflexive=base.residuals.reflexive,
        commuting=base.residuals.commuting,
        nilpotency=spectral_radius(term, tol, scale) / max(1.0, scale),
    )
    return InverseWitness(x=base.x, kind=kind, witness_n=None, drazin_index=base.drazin_index, residuals=residuals)


def _gs_expression(a: Matrix, x: Matrix) -> Tuple[Matrix, float]:
    return a - a @ x, a.norm() * (1.0 + x.norm())


def _g_hirano_expression(a: Matrix, x: Matrix) -> Tuple[Matrix, float]:
    return a @ a - a @ x, a.norm() * (a.norm() + x.norm())


def g_pi_hirano(a: Matrix, tol: Tolerances) -> Optional[InverseWitness]:
    """Computes the g-pi-Hirano inverse, if it exists.

    The inverse is the Drazin inverse, and witness_n is the lcm of the unity orders of the nonzero
    eigenvalues. Before returning, a - a^(witness_n + 2) x is checked to be nilpotent.

    Raises:
        WitnessOverflow: If the witness is too large to check; the exception carries the unverified witness.
        NumericAmbiguity: If classification is ambiguous or the witness check fails.
    """
    report = classify(a, tol)
    if not report.g_pi_hirano or report.gpih_witness_n is None:
        return None

    base = drazin(a, tol)
    n = report.gpih_witness_n
    if report.witness_overflow:
        logger.warning("skipping the power check of witness exponent %d", n)
        raise WitnessOverflow(
            InverseWitness(
                x=base.x,
                kind=InverseKind.GPI_HIRANO,
                witness_n=n,
                drazin_index=base.drazin_index,
                residuals=base.residuals,
                verified=False,
            )
        )

    power = mat_power(a, n + 2)
    term = a - power @ base.x
    scale = a.norm() + power.norm() * base.x.norm()
    if not is_quasinilpotent(term, tol, scale):
        raise NumericAmbiguity(f"spectrum says g-pi-Hirano with witness {n}, but a - a^{n + 2} x is not nilpotent")

    residuals = Residuals(
        reflexive=base.residuals.reflexive,
        commuting=base.residuals.commuting,
        nilpotency=spectral_radius(term, tol, scale) / max(1.0, scale),
    )
    return InverseWitness(
        x=base.x, kind=InverseKind.GPI_HIRANO, witness_n=n, drazin_index=base.drazin_index, residuals=residuals
    )


def gs_drazin(a: Matrix, tol: Tolerances) -> Optional[Matrix]:
    """Returns the gs-Drazin inverse, which exists iff the spectrum lies in {0, 1}."""
    witness = invert(a, InverseKind.GS_DRAZIN, tol)
    return witness.x if witness is not None else None


def g_hirano(a: Matrix, tol: Tolerances) -> Optional[Matrix]:
    """Returns the g-Hirano inverse, which exists iff the spectrum lies in {0, 1, -1}."""
    witness = invert(a, InverseKind.G_HIRANO, tol)
    return witness.x if witness is not None else None


def invert(a: Matrix, kind: InverseKind, tol: Tolerances) -> Optional[InverseWitness]:
    """Computes the inverse of the requested kind, or None if a has none.

    Raises:
        WitnessOverflow: See 'g_pi_hirano'.
    """
    match kind:
        case InverseKind.DRAZIN:
            return drazin(a, tol)
        case InverseKind.GROUP:
            return group_inverse(a, tol)
        case InverseKind.GPI_HIRANO:
            return g_pi_hirano(a, tol)
        case InverseKind.GS_DRAZIN:
            if not classify(a, tol).gs_drazin:
                return None
            return _class_witness(a, tol, kind, _gs_expression)
        case InverseKind.G_HIRANO:
            if not classify(a, tol).g_hirano:
                return None
            return _class_witness(a, tol, kind, _g_hirano_expression)


def g_pi_hirano_oracle(a: Matrix, tol: Tolerances) -> Optional[int]:
    """Returns the smallest n in 1..n_oracle with a - a^(n+1) nilpotent, by trying each one.

    Independent of the spectral classifier: every decision goes through 'is_quasinilpotent'.

    Raises:
        OverflowDetected: If a power of a is no longer finite.
    """
    norm = a.norm2()
    power = a
    for n in range(1, tol.n_oracle + 1):
        power = power @ a
        if is_quasinilpotent(a - power, tol, scale=norm + power.norm2()):
            return n
    return None


def g_pi_hirano_pairwise_oracle(a: Matrix, tol: Tolerances) -> Optional[Tuple[int, int]]:
    """Searches for m < n <= n_oracle with a^m - a^n nilpotent.

    Pairs are tried by increasing gap n - m, then by m.

    Returns:
        The first pair found, or None.
    """
    powers = [Matrix.identity(a.n), a]
    while len(powers) <= tol.n_oracle:
        powers.append(powers[-1] @ a)
    norms = [power.norm2() for power in powers]
    for gap in range(1, tol.n_oracle):
        for m in range(1, tol.n_oracle - gap + 1):
            n = m + gap
            if is_quasinilpotent(powers[m] - powers[n], tol, scale=norms[m] + norms[n]):
                return m, n
    return None
