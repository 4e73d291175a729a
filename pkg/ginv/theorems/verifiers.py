"""One verifier per family of results on g-pi-Hirano inverses.

A verifier checks its own hypotheses first; a hypothesis that fails is either PreconditionViolated
(for the hypothesis the verifier exists for) or a skipped leg (for hypotheses of individual items).
Every decision on quasinilpotency goes through 'is_quasinilpotent' and every class decision through
'classify', so a verifier compares independently computed facts rather than restating a formula.
"""

import logging
from typing import Optional

from ..algebra import Matrix, mat_from_blocks2, mat_power, relative_residual
from ..conditions import WordPattern, annihilates, check_word_condition
from ..config import Tolerances
from ..errors import PreconditionViolated
from ..inverse import classify, drazin, drazin_by_pinv, g_pi_hirano, g_pi_hirano_oracle, g_pi_hirano_pairwise_oracle
from ..spectral import is_quasinilpotent
from .common import Ledger, TrialReport, digest

logger = logging.getLogger(__name__)

ENGINE_FACTOR = 10.0
"""Defining-identity residuals of the Drazin engine must stay below this many tol_res."""

AGREEMENT_FACTOR = 100.0
"""Two independently computed inverses must agree within this many tol_res."""


def _qnil(m: Matrix, tol: Tolerances, scale: Optional[float] = None) -> bool:
    return is_quasinilpotent(m, tol, scale)


def _gpih(m: Matrix, tol: Tolerances) -> bool:
    return classify(m, tol).g_pi_hirano


def verify_existence_equivalences(a: Matrix, tol: Tolerances, pairwise: bool = True) -> TrialReport:
    """Checks that the existence criteria for the g-pi-Hirano inverse agree.

    The spectral classifier is compared with the search for n with a - a^(n+1) nilpotent and, when
    pairwise is set, with the search for m < n with a^m - a^n nilpotent. At x = a^D, a^j - a^(j+1) x is
    nilpotent for j = max(index, 1); when a is g-pi-Hirano with witness w, the exponents found by the
    searches are w and (1, w + 1), and a^w - ax and a^(w+1) - a^2 x are nilpotent. Membership is
    also compared with that of a^2 and a^3.
    """
    ledger = Ledger("existence", digest(a))
    report = classify(a, tol)
    witness = report.gpih_witness_n
    in_range = witness is None or witness <= tol.n_oracle

    oracle = g_pi_hirano_oracle(a, tol)
    if in_range:
        ledger.agree("oracle", report.g_pi_hirano, oracle is not None)
        if witness is not None:
            ledger.check("oracle-exponent", oracle == witness)
    else:
        ledger.skip("oracle")

    if pairwise:
        pair = g_pi_hirano_pairwise_oracle(a, tol)
        if witness is None or witness < tol.n_oracle:
            ledger.agree("pairwise", report.g_pi_hirano, pair is not None)
            if witness is not None:
                ledger.check("pairwise-exponents", pair == (1, witness + 1))
        else:
            ledger.skip("pairwise")

    x = drazin(a, tol).x
    j = max(report.drazin_index, 1)
    a_j = mat_power(a, j)
    ledger.check("drazin-power", _qnil(a_j - a_j @ a @ x, tol, a_j.norm() * (1.0 + a.norm() * x.norm())))

    if report.g_pi_hirano and not report.witness_overflow and witness is not None:
        inverse = g_pi_hirano(a, tol)
        ledger.check("inverse-exists", inverse is not None)
        if inverse is not None:
            ledger.residual("reflexive", inverse.residuals.reflexive, ENGINE_FACTOR * tol.tol_res)
            ledger.residual("commuting", inverse.residuals.commuting, ENGINE_FACTOR * tol.tol_res)
            a_w = mat_power(a, witness)
            a_x = a @ inverse.x
            ledger.check("power-minus-ax", _qnil(a_w - a_x, tol, a_w.norm() + a_x.norm()))
            shifted = a_w @ a - a @ a_x
            ledger.check("shifted-power", _qnil(shifted, tol, a_w.norm() * a.norm() + a.norm() * a_x.norm()))
    else:
        ledger.skip("inverse-exists")

    for k in (2, 3):
        ledger.agree(f"power-{k}", report.g_pi_hirano, _gpih(mat_power(a, k), tol))
    return ledger.report()


def verify_additive_kstar(a: Matrix, b: Matrix, k: int, pattern: WordPattern, tol: Tolerances) -> TrialReport:
    """Checks that under the k-star condition a, b are both quasinilpotent (resp. g-pi-Hirano) iff a + b is.

    Also checks that the condition persists at k + 1.

    Raises:
        PreconditionViolated: If the word condition fails.
    """
    if pattern not in (WordPattern.STAR_LEFT, WordPattern.STAR_RIGHT):
        raise ValueError(f"pattern must be kstar or kstar-r, got {pattern}")
    condition = check_word_condition(a, b, k, pattern, tol)
    if not condition.holds:
        raise PreconditionViolated(f"{pattern} condition fails at k={k} (residual {condition.worst_residual:.3e})")

    theorem_id = "additive-kstar" if pattern is WordPattern.STAR_LEFT else "additive-kstar-mirror"
    ledger = Ledger(theorem_id, digest(a, b))
    ledger.residual("condition", condition.worst_residual, tol.tol_res)
    ledger.check("condition-next-k", check_word_condition(a, b, k + 1, pattern, tol).holds)

    total = a + b
    ledger.agree("qnil", _qnil(a, tol) and _qnil(b, tol), _qnil(total, tol))
    ledger.agree("gpih", _gpih(a, tol) and _gpih(b, tol), _gpih(total, tol))
    return ledger.report()


def verify_drazin_additive(a: Matrix, b: Matrix, tol: Tolerances) -> TrialReport:
    """Checks (a + b)^D = a^D + b^D when ab = ba = 0.

    Every square matrix is Drazin invertible, so the membership equivalence itself always holds; what
    is checked is the additive formula, that x1 = a^2 (a+b)^D has Drazin inverse a ((a+b)^D)^2, and
    that x2 = a - a^2 (a+b)^D is nilpotent.

    Raises:
        PreconditionViolated: If ab or ba does not vanish.
    """
    if not (annihilates(a, b) and annihilates(b, a)):
        raise PreconditionViolated("ab and ba must both vanish")

    ledger = Ledger("drazin-additive", digest(a, b))
    x_sum = drazin(a + b, tol).x
    x_a = drazin(a, tol).x
    x_b = drazin(b, tol).x
    scale = x_sum.norm() + x_a.norm() + x_b.norm()
    ledger.residual("additive-formula", relative_residual(x_sum - x_a - x_b, scale), AGREEMENT_FACTOR * tol.tol_res)

    # thresholds come from |a|; a^2 may be rounding noise
    x1 = (a @ a) @ x_sum
    x1_scale = a.norm() ** 2 * x_sum.norm()
    expected = a @ x_sum @ x_sum
    x1_inverse = drazin(x1, tol, scale=x1_scale).x
    ledger.residual(
        "core-part-inverse",
        relative_residual(x1_inverse - expected, x1_inverse.norm() + expected.norm()),
        AGREEMENT_FACTOR * tol.tol_res,
    )
    ledger.check("nilpotent-part", _qnil(a - x1, tol, a.norm() + x1_scale))
    return ledger.report()


def verify_drazin_engine(a: Matrix, tol: Tolerances) -> TrialReport:
    """Checks the Drazin inverse against its defining identities and against the pseudo-inverse formula."""
    ledger = Ledger("drazin-engine", digest(a))
    witness = drazin(a, tol)
    x = witness.x
    ledger.residual("reflexive", witness.residuals.reflexive, ENGINE_FACTOR * tol.tol_res)
    ledger.residual("commuting", witness.residuals.commuting, ENGINE_FACTOR * tol.tol_res)

    a_k = mat_power(a, witness.drazin_index)
    a_k1 = a_k @ a
    ledger.residual(
        "power",
        relative_residual(a_k1 @ x - a_k, a_k1.norm() * x.norm() + a_k.norm()),
        ENGINE_FACTOR * tol.tol_res,
    )
    oracle = drazin_by_pinv(a, tol)
    ledger.residual(
        "pinv-agreement", relative_residual(x - oracle, x.norm() + oracle.norm()), AGREEMENT_FACTOR * tol.tol_res
    )
    return ledger.report()


def verify_block_triangular(a: Matrix, b: Matrix, c_off: Matrix, tol: Tolerances) -> TrialReport:
    """Checks that [[a, c], [0, b]] and [[b, 0], [c, a]] are quasinilpotent (resp. g-pi-Hirano) iff a and b are.

    Raises:
        DimensionMismatch: If the blocks differ in order.
    """
    zero = Matrix.zero(a.n)
    upper = mat_from_blocks2(a, c_off, zero, b)
    lower = mat_from_blocks2(b, zero, c_off, a)

    ledger = Ledger("block-triangular", digest(a, b, c_off))
    both_qnil = _qnil(a, tol) and _qnil(b, tol)
    both_gpih = _gpih(a, tol) and _gpih(b, tol)
    for name, m in (("upper", upper), ("lower", lower)):
        ledger.agree(f"{name}-qnil", both_qnil, _qnil(m, tol))
        ledger.agree(f"{name}-gpih", both_gpih, _gpih(m, tol))
    return ledger.report()


def verify_k_ast_properties(a: Matrix, b: Matrix, k: int, pattern: WordPattern, tol: Tolerances) -> TrialReport:
    """Checks the consequences of the k-ast condition.

    Items, each skipped when the instance misses its hypothesis:

      qnil-product         a or b quasinilpotent => ab quasinilpotent
      qnil-sum             a quasinilpotent => (b quasinilpotent <=> a + b quasinilpotent)
      gpih-product         a, b g-pi-Hirano => ab g-pi-Hirano
      gpih-sum             a quasinilpotent, b g-pi-Hirano => a + b g-pi-Hirano
      unit-shift           a, b g-pi-Hirano => (I + a^gpiH b g-pi-Hirano <=> a + b g-pi-Hirano)
      unit-shift-partial   a, a + b g-pi-Hirano => I + a^gpiH b g-pi-Hirano

    The converse of unit-shift-partial needs b to be g-pi-Hirano and is not checked without it.

    Raises:
        PreconditionViolated: If the word condition fails.
    """
    if pattern not in (WordPattern.AST_LEFT, WordPattern.AST_RIGHT):
        raise ValueError(f"pattern must be kast or kast-r, got {pattern}")
    condition = check_word_condition(a, b, k, pattern, tol)
    if not condition.holds:
        raise PreconditionViolated(f"{pattern} condition fails at k={k} (residual {condition.worst_residual:.3e})")

    theorem_id = "kast-properties" if pattern is WordPattern.AST_LEFT else "kast-properties-mirror"
    ledger = Ledger(theorem_id, digest(a, b))
    ledger.residual("condition", condition.worst_residual, tol.tol_res)
    ledger.check("condition-next-k", check_word_condition(a, b, k + 1, pattern, tol).holds)

    product, total = a @ b, a + b
    product_scale = a.norm() * b.norm()
    qnil_a, qnil_b = _qnil(a, tol), _qnil(b, tol)
    gpih_a, gpih_b = _gpih(a, tol), _gpih(b, tol)
    gpih_total = _gpih(total, tol)

    ledger.implies("qnil-product", qnil_a or qnil_b, _qnil(product, tol, product_scale))
    if qnil_a:
        ledger.agree("qnil-sum", qnil_b, _qnil(total, tol))
    else:
        ledger.skip("qnil-sum")
    ledger.implies("gpih-product", gpih_a and gpih_b, _gpih(product, tol))
    ledger.implies("gpih-sum", qnil_a and gpih_b, gpih_total)

    inverse = g_pi_hirano(a, tol) if gpih_a else None
    if inverse is None:
        ledger.skip("unit-shift")
        ledger.skip("unit-shift-partial")
        return ledger.report()
    shifted = _gpih(Matrix.identity(a.n) + inverse.x @ b, tol)
    if gpih_b:
        ledger.agree("unit-shift", shifted, gpih_total)
    else:
        ledger.skip("unit-shift")
    ledger.implies("unit-shift-partial", gpih_total, shifted)
    return ledger.report()


def verify_anti_triangular(
    a: Matrix, b: Matrix, c: Matrix, k: int, tol: Tolerances, require_kstar: bool = False
) -> TrialReport:
    """Checks results on the anti-triangular matrix M = [[a, b], [c, 0]].

    - If a, bc (or bc, a) satisfy the k-star condition: a, bc g-pi-Hirano <=> M g-pi-Hirano.
    - bc g-pi-Hirano <=> cb g-pi-Hirano.
    - If a = b = I: c quasinilpotent <=> M g-Hirano.

    Args:
        a: The top-left block.
        b: The top-right block.
        c: The bottom-left block.
        k: The word length of the k-star condition.
        tol: The tolerances.
        require_kstar: Raise instead of skipping when neither order satisfies the k-star condition.

    Raises:
        DimensionMismatch: If the blocks differ in order.
        PreconditionViolated: If require_kstar is set and the k-star condition fails in both orders.
    """
    m = mat_from_blocks2(a, b, c, Matrix.zero(a.n))
    bc, cb = b @ c, c @ b
    theorem_id = "anti-triangular-unit" if _is_identity(a) and _is_identity(b) else "anti-triangular"
    ledger = Ledger(theorem_id, digest(a, b, c))

    forward = check_word_condition(a, bc, k, WordPattern.STAR_LEFT, tol)
    backward = check_word_condition(bc, a, k, WordPattern.STAR_LEFT, tol)
    gpih_m = _gpih(m, tol)
    gpih_bc = _gpih(bc, tol)
    if forward.holds or backward.holds:
        ledger.residual("condition", min(forward.worst_residual, backward.worst_residual), tol.tol_res)
        ledger.agree("kstar-anti-triangular", _gpih(a, tol) and gpih_bc, gpih_m)
    elif require_kstar:
        raise PreconditionViolated(f"neither (a, bc) nor (bc, a) satisfies the {k}-star condition")
    else:
        ledger.skip("kstar-anti-triangular")

    ledger.agree("product-swap", gpih_bc, _gpih(cb, tol))

    if theorem_id == "anti-triangular-unit":
        ledger.agree("unit-blocks", _qnil(c, tol), classify(m, tol).g_hirano)
    else:
        ledger.skip("unit-blocks")
    return ledger.report()


def _is_identity(m: Matrix) -> bool:
    return m == Matrix.identity(m.n)


def verify_product_swap(a: Matrix, b: Matrix, tol: Tolerances) -> TrialReport:
    """Checks that ab is g-pi-Hirano iff ba is, and that (ba)^2 - (ba)^(w+2) is nilpotent for the witness w of ab."""
    ledger = Ledger("product-swap", digest(a, b))
    ab, ba = a @ b, b @ a
    report = classify(ab, tol)
    ledger.agree("swap", report.g_pi_hirano, _gpih(ba, tol))

    w = report.gpih_witness_n
    if report.g_pi_hirano and w is not None and not report.witness_overflow:
        ba_squared = ba @ ba
        ba_power = mat_power(ba, w + 2)
        ledger.check("swapped-power", _qnil(ba_squared - ba_power, tol, ba_squared.norm() + ba_power.norm()))
    else:
        ledger.skip("swapped-power")
    return ledger.report()


def verify_qnil_lemmas(a: Matrix, b: Matrix, tol: Tolerances) -> TrialReport:
    """Checks the elementary facts on nilpotent matrices the other results rest on.

    For commuting a, b: a or b nilpotent => ab nilpotent, and a, b nilpotent => a + b nilpotent.
    For ab = 0: a, b nilpotent => a + b nilpotent. For any a: a nilpotent <=> a^n nilpotent, and a
    has a gs-Drazin inverse iff a - a^2 is nilpotent.
    """
    ledger = Ledger("qnil-lemmas", digest(a, b))
    qnil_a, qnil_b = _qnil(a, tol), _qnil(b, tol)
    ab = a @ b
    scale = a.norm() * b.norm()
    commuting = (ab - b @ a).norm() <= tol.tol_res * max(1.0, 2.0 * scale)

    if commuting:
        ledger.implies("commuting-product", qnil_a or qnil_b, _qnil(ab, tol, scale))
        ledger.implies("commuting-sum", qnil_a and qnil_b, _qnil(a + b, tol))
    else:
        ledger.skip("commuting-product")
        ledger.skip("commuting-sum")
    if annihilates(a, b):
        ledger.implies("annihilating-sum", qnil_a and qnil_b, _qnil(a + b, tol))
    else:
        ledger.skip("annihilating-sum")

    for n in (2, 3):
        ledger.agree(f"power-{n}", qnil_a, _qnil(mat_power(a, n), tol))
    a_squared = a @ a
    ledger.agree("gs-criterion", classify(a, tol).gs_drazin, _qnil(a - a_squared, tol, a.norm() + a_squared.norm()))
    return ledger.report()
