"""
Bi-Lanczos tridiagonalization of a non-Hermitian superoperator

Right vectors Oₙ are unit norm and left vectors Õₙ satisfy (Õₙ|Oₘ) = δₙₘ.
The recurrence is

    ℒ Oₙ  = aₙ Oₙ + bₙ₊₁ Oₙ₊₁ + cₙ Oₙ₋₁
    ℒ† Õₙ = aₙ* Õₙ + cₙ₊₁* Õₙ₊₁ + bₙ Õₙ₋₁

so the projected matrix [(Õₙ|ℒ|Oₘ)] carries aₙ on the diagonal, bₙ on the
sub-diagonal and cₙ on the super-diagonal.
"""

from typing import Optional, Tuple

import numpy as np

from src.core.config import Settings, settings
from src.core.exceptions import InvalidArgumentError, NumericalBreakdownError
from src.core.logging import get_logger
from src.models.base import TerminationReason
from src.models.krylov import GrowthFit, KrylovData, KrylovDiagnostics
from src.models.lindbladian import Superoperator
from src.models.operators import OperatorVector
from src.services.lindbladian import adjoint
from src.services.operator_algebra import operator_norm_sq

log = get_logger("bilanczos")


def _project_out(vector: np.ndarray, targets: np.ndarray, duals: np.ndarray, dim: int) -> np.ndarray:
    """vector − Σₖ (dualₖ|vector)·targetₖ, applied twice"""
    for _ in range(2):
        vector = vector - targets.T @ (duals.conj() @ vector / dim)
    return vector


def bi_lanczos(
    superoperator: Superoperator,
    x0: OperatorVector,
    tol: Optional[float] = None,
    max_dim: Optional[int] = None,
    alignment_tol: Optional[float] = None,
    config: Settings = settings,
) -> KrylovData:
    """Run the two-sided recursion from O₀ = Õ₀ = X₀

    Stops on breakdown (bₙ or ‖Bₙ‖ below tol relative to b₁), on alignment
    (ℒOₙ parallel to Oₙ within tol, or a candidate Oₙ₊₁ whose overlap with Oₙ
    exceeds 1 − alignment_tol), on an ill-conditioned left/right pair, or at
    max_dim. Raises NumericalBreakdownError on a vanishing pair cosine or lost
    biorthogonality.
    """
    dim = superoperator.dim
    tol = tol if tol is not None else config.lanczos_tol
    alignment_tol = alignment_tol if alignment_tol is not None else config.alignment_tol
    if tol <= 0:
        raise InvalidArgumentError(f"Tolerance must be positive, got {tol}")
    if not 0 < alignment_tol < 1:
        raise InvalidArgumentError(f"Alignment tolerance must lie in (0, 1), got {alignment_tol}")
    if x0.dim != dim:
        raise InvalidArgumentError(f"Initial operator has dimension {x0.dim}, expected {dim}")
    norm_sq = operator_norm_sq(x0)
    if abs(norm_sq - 1.0) > 1e-10:
        raise InvalidArgumentError(f"Initial operator must be normalized, (X0|X0) = {norm_sq}")

    max_dim = min(max_dim or dim * dim, dim * dim)
    matrix = superoperator.matrix
    matrix_h = adjoint(superoperator)

    def ip(u: np.ndarray, v: np.ndarray) -> complex:
        return complex(np.vdot(u, v) / dim)

    right = [x0.data.astype(complex)]
    left = [x0.data.astype(complex)]
    a: list = []
    b: list = [0.0]
    c: list = [0j]
    reason = TerminationReason.MAX_DIM

    for n in range(1, max_dim + 1):
        o_prev, l_prev = right[-1], left[-1]
        candidate = matrix @ o_prev
        a_prev = ip(l_prev, candidate)
        a.append(a_prev)
        if n == max_dim:
            break

        candidate_norm = np.sqrt(max(ip(candidate, candidate).real, 0.0))
        if candidate_norm > 0 and abs(ip(o_prev, candidate)) / candidate_norm > 1.0 - tol:
            reason = TerminationReason.ALIGNMENT
            break

        A = candidate - a_prev * o_prev
        B = matrix_h @ l_prev - np.conj(a_prev) * l_prev
        if n > 1:
            A = A - c[-1] * right[-2]
            B = B - b[-1] * left[-2]

        right_stack, left_stack = np.array(right), np.array(left)
        A = _project_out(A, right_stack, left_stack, dim)
        B = _project_out(B, left_stack, right_stack, dim)

        b_n = np.sqrt(max(ip(A, A).real, 0.0))
        b_left = np.sqrt(max(ip(B, B).real, 0.0))
        reference = b[1] if n > 1 else candidate_norm
        if b_n <= tol * reference or b_left <= tol * reference:
            reason = TerminationReason.BREAKDOWN
            break

        o_next = A / b_n
        if abs(ip(o_prev, o_next)) > 1.0 - alignment_tol:
            reason = TerminationReason.ALIGNMENT
            break

        overlap = ip(B, A)
        cosine = abs(overlap) / (b_n * b_left)
        if cosine < tol:
            raise NumericalBreakdownError("Serious breakdown: (B|A) vanishes", step=n)
        if 1.0 / cosine > config.max_pair_condition:
            reason = TerminationReason.ILL_CONDITIONED
            break

        c_n = overlap / b_n
        l_next = B / np.conj(c_n)

        drift = max(
            np.max(np.abs(left_stack.conj() @ o_next / dim)),
            np.max(np.abs(right_stack.conj() @ l_next / dim)),
        )
        if drift > config.biorthogonality_limit:
            raise NumericalBreakdownError(
                f"Lost biorthogonality ({drift:.2e}) after re-biorthogonalization", step=n
            )

        if abs(c_n.imag) > tol * max(abs(c_n), 1.0):
            log.debug("c_{} carries phase: {:.3e}", n, c_n)

        right.append(o_next)
        left.append(l_next)
        b.append(float(b_n))
        c.append(complex(c_n))

    size = len(a)
    log.debug("bi-Lanczos stopped at M={} ({})", size, reason.value)
    return KrylovData(
        a=np.array(a, dtype=complex),
        b=np.array(b[:size], dtype=float),
        c=np.array(c[:size], dtype=complex),
        right_basis=np.array(right[:size]),
        left_basis=np.array(left[:size]),
        hilbert_dim=dim,
        termination_reason=reason,
    )


def tridiagonal_matrix(krylov: KrylovData) -> np.ndarray:
    """Projected matrix [(Õₙ|ℒ|Oₘ)] in tridiagonal form"""
    tri = np.diag(krylov.a.astype(complex))
    if krylov.dim > 1:
        tri += np.diag(krylov.b[1:].astype(complex), -1)
        tri += np.diag(krylov.c[1:], 1)
    return tri


def projected_matrix(superoperator: Superoperator, krylov: KrylovData) -> np.ndarray:
    """[(Õₙ|ℒ|Oₘ)] computed directly from the bases"""
    lifted = superoperator.matrix @ krylov.right_basis.T
    return krylov.left_basis.conj() @ lifted / krylov.hilbert_dim


def check_krylov(superoperator: Superoperator, krylov: KrylovData) -> KrylovDiagnostics:
    """Biorthonormality, recurrence and projection residuals plus coefficient signs"""
    dim = krylov.hilbert_dim
    size = krylov.dim
    right, left = krylov.right_basis, krylov.left_basis

    biorth = left.conj() @ right.T / dim
    projection = projected_matrix(superoperator, krylov)

    residual = 0.0
    for n in range(size - 1):
        expected = krylov.a[n] * right[n] + krylov.b[n + 1] * right[n + 1]
        if n > 0:
            expected = expected + krylov.c[n] * right[n - 1]
        diff = superoperator.matrix @ right[n] - expected
        residual = max(residual, float(np.sqrt(np.vdot(diff, diff).real / dim)))

    return KrylovDiagnostics(
        biorthonormality_error=float(np.max(np.abs(biorth - np.eye(size)))),
        recurrence_residual=residual,
        projection_error=float(np.max(np.abs(projection - tridiagonal_matrix(krylov)))),
        max_real_a=float(np.max(np.abs(krylov.a.real))),
        max_imag_c=float(np.max(np.abs(krylov.c.imag))) if size > 1 else 0.0,
        bc_signs=[int(s) for s in np.sign(krylov.b[1:] * krylov.c[1:].real)],
    )


def hermitian_lanczos(
    matrix: np.ndarray,
    x0: OperatorVector,
    tol: float = 1e-8,
    max_dim: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Single-sided Lanczos with full re-orthogonalization for a Hermitian ℒ

    Returns (alpha, beta, basis) with beta[0] = 0.
    """
    dim = x0.dim
    max_dim = min(max_dim or dim * dim, dim * dim)
    basis = [x0.data.astype(complex)]
    alpha, beta = [], [0.0]

    for n in range(1, max_dim + 1):
        w = matrix @ basis[-1]
        alpha.append(float((np.vdot(basis[-1], w) / dim).real))
        if n == max_dim:
            break
        w = w - alpha[-1] * basis[-1]
        if n > 1:
            w = w - beta[-1] * basis[-2]
        stack = np.array(basis)
        for _ in range(2):
            w = w - stack.T @ (stack.conj() @ w / dim)
        beta_n = float(np.sqrt(np.vdot(w, w).real / dim))
        reference = beta[1] if n > 1 else np.sqrt(np.vdot(matrix @ basis[0], matrix @ basis[0]).real / dim)
        if beta_n <= tol * reference:
            break
        basis.append(w / beta_n)
        beta.append(beta_n)

    size = len(alpha)
    return np.array(alpha), np.array(beta[:size]), np.array(basis[:size])


def fit_lanczos_growth(krylov: KrylovData, n_fit: int = 10) -> Optional[GrowthFit]:
    """bₙ ≈ αn + γ over n = 1…n_fit"""
    upper = min(n_fit, krylov.dim - 1)
    if upper < 2:
        return None
    n = np.arange(1, upper + 1)
    alpha, gamma = np.polyfit(n, krylov.b[1:upper + 1], 1)
    return GrowthFit(alpha=float(alpha), gamma=float(gamma), n_points=int(upper))
