"""
Functional calculus for real symmetric matrices.

Eigendecomposition, operator norm, the positive square root computed by the
recursion B₀ = 0, B_{n+1} = B_n + ½(A − B_n²), |A|, the projection E₊ onto
the non-negative part of the spectrum, the decomposition of the identity
E_λ, Riemann spectral sums, finite spectral descriptions and the invariant
pair of a projection.
"""
from typing import Optional

import numpy as np

from core.config import Config

from ..common import get_logger
from ..errors import InternalNoConvergence, NotAProjection, NotPositive, PartitionDoesNotCoverSpectrum
from .models import VALUE_TOL, OrthogonalMap, RiemannPartition, SelfAdjointOperator, SpectralDescription

logger = get_logger(__name__)

PSD_TOL = 1e-10
SIGN_TOL = 1e-9
SQRT_RESIDUAL_TOL = 1e-8


def eigendecompose(A: SelfAdjointOperator) -> tuple[np.ndarray, OrthogonalMap]:
    """
    Diagonalize A as Q·diag(λ)·Qᵀ.

    Returns:
        tuple: (ascending eigenvalues, Q with eigenvectors as columns)
    """
    try:
        eigenvalues, vectors = np.linalg.eigh(A.entries)
    except np.linalg.LinAlgError as e:
        raise InternalNoConvergence(f"eigendecomposition failed: {e}") from e
    eigenvalues.setflags(write=False)
    return eigenvalues, OrthogonalMap(entries=vectors)


def operator_norm(A: SelfAdjointOperator) -> float:
    """‖A‖_op = max |eigenvalue|."""
    eigenvalues = np.linalg.eigvalsh(A.entries)
    return float(max(abs(eigenvalues[0]), abs(eigenvalues[-1])))


def _norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix, 2))


def _newton_polish(B: np.ndarray, x: np.ndarray, Q: np.ndarray, steps: int = 100) -> np.ndarray:
    """
    Refine a square root B of X = Q·diag(x)·Qᵀ by scalar Newton steps
    b ← ½(b + x/b) in the eigenbasis of X, seeded from the diagonal of QᵀBQ.

    The recursion's contraction factor per step is 1 − √x, so eigenvalues
    near 0 leave it far from converged; Newton is quadratic from any
    positive seed.
    """
    roots = np.einsum('ji,jk,ki->i', Q, B, Q)
    positive = x > 0
    # Newton needs a positive seed; x ≤ √x keeps it at or below the root
    b = np.where(positive, np.maximum(roots, x), 0.0)
    safe_b = np.where(positive, b, 1.0)
    for _ in range(steps):
        b_next = np.where(positive, 0.5 * (safe_b + x / safe_b), 0.0)
        if np.array_equal(b_next, b):
            break
        b = b_next
        safe_b = np.where(positive, b, 1.0)
    return (Q * b) @ Q.T


def positive_sqrt(
    A: SelfAdjointOperator,
    max_steps: Optional[int] = None,
    step_tol: Optional[float] = None,
) -> SelfAdjointOperator:
    """
    Positive square root of a positive semidefinite operator.

    The recursion B_{n+1} = B_n + ½(X − B_n²), B₀ = 0 converges monotonically
    to √X only for 0 ≤ X ≤ I, so it runs on X = A/‖A‖ and the limit is
    rescaled by √‖A‖. Eigenvalues in [−1e-10, 0) are clamped to 0. The
    recursion is slow on small eigenvalues, so its result is finished by
    Newton steps in the eigenbasis before the residual is checked.

    Args:
        A: Positive semidefinite operator
        max_steps: Step cap (default from Config, 10,000)
        step_tol: Stop once ‖B_{n+1} − B_n‖_F ≤ step_tol (default 1e-12)

    Raises:
        NotPositive: If the smallest eigenvalue is below −1e-10
        InternalNoConvergence: If ‖S² − A‖_op > 1e-8·max(1, ‖A‖_op)
    """
    max_steps = max_steps or Config.sqrt_max_steps()
    step_tol = step_tol or Config.sqrt_step_tol()

    eigenvalues, Q = eigendecompose(A)
    if eigenvalues[0] < -PSD_TOL:
        raise NotPositive(float(eigenvalues[0]))

    clamped = np.clip(eigenvalues, 0.0, None)
    matrix = A.entries
    if eigenvalues[0] < 0:
        matrix = Q.entries @ np.diag(clamped) @ Q.entries.T

    norm = float(max(abs(eigenvalues[0]), abs(eigenvalues[-1])))
    if norm == 0.0:
        return SelfAdjointOperator.zero(A.dim)

    X = matrix / norm
    B = np.zeros_like(X)
    for step in range(1, max_steps + 1):
        B_next = B + 0.5 * (X - B @ B)
        delta = float(np.linalg.norm(B_next - B))
        B = B_next
        if delta <= step_tol:
            logger.debug(f"square-root recursion converged after {step} steps")
            break
    else:
        logger.warning(
            f"square-root recursion hit the {max_steps}-step cap (last step {delta:.2e})"
        )

    B = _newton_polish(B, clamped / norm, Q.entries)
    S = SelfAdjointOperator.symmetrized(np.sqrt(norm) * B)

    residual = _norm(S.entries @ S.entries - A.entries)
    bound = SQRT_RESIDUAL_TOL * max(1.0, norm)
    if residual > bound:
        raise InternalNoConvergence(f"square root residual {residual:.3e} exceeds {bound:.3e}")
    return S


def abs_operator(A: SelfAdjointOperator) -> SelfAdjointOperator:
    """|A|, the positive square root of A²."""
    return positive_sqrt(SelfAdjointOperator.symmetrized(A.entries @ A.entries))


def _spectral_projector(
    eigenvalues: np.ndarray, Q: OrthogonalMap, mask: np.ndarray
) -> SelfAdjointOperator:
    vectors = Q.entries[:, mask]
    return SelfAdjointOperator.symmetrized(vectors @ vectors.T)


def positive_projection(A: SelfAdjointOperator) -> SelfAdjointOperator:
    """
    E₊, the projection onto Ker(A − |A|).

    That kernel is spanned by the eigenvectors with eigenvalue ≥ 0, so the
    kernel of A itself lies in the range of E₊.
    """
    eigenvalues, Q = eigendecompose(A)
    return _spectral_projector(eigenvalues, Q, eigenvalues >= -SIGN_TOL)


def identity_decomposition(A: SelfAdjointOperator, lam: float) -> SelfAdjointOperator:
    """
    E_λ, the projection onto the eigenspaces with eigenvalue strictly below λ.

    The strict inequality makes λ ↦ E_λ left-continuous. E_λ is exactly 0 for
    λ ≤ min σ(A) and exactly I for λ > max σ(A).
    """
    eigenvalues, Q = eigendecompose(A)
    if lam <= eigenvalues[0]:
        return SelfAdjointOperator.zero(A.dim)
    if lam > eigenvalues[-1]:
        return SelfAdjointOperator.identity(A.dim)
    return _spectral_projector(eigenvalues, Q, eigenvalues < lam)


def spectral_riemann_sum(
    A: SelfAdjointOperator, partition: RiemannPartition
) -> tuple[SelfAdjointOperator, float]:
    """
    Approximate A by Σ_k ν_k·E(Δ_k) where E(Δ_k) = E_{μ_k} − E_{γ_k}.

    Returns:
        tuple: (the finite sum, its operator-norm distance to A); the distance
        is at most the partition mesh

    Raises:
        PartitionDoesNotCoverSpectrum: If an eigenvalue lies outside [left, right)
    """
    eigenvalues, Q = eigendecompose(A)
    for value in eigenvalues:
        if not partition.left <= value < partition.right:
            raise PartitionDoesNotCoverSpectrum(float(value), partition.left, partition.right)

    approx = np.zeros((A.dim, A.dim))
    for (lo, hi), tag in zip(partition.cells, partition.tags):
        mask = (eigenvalues >= lo) & (eigenvalues < hi)
        if mask.any():
            approx += tag * _spectral_projector(eigenvalues, Q, mask).entries

    result = SelfAdjointOperator.symmetrized(approx)
    error = _norm(A.entries - result.entries)
    logger.debug(f"Riemann sum over {len(partition.cells)} cells: error {error:.3e}, mesh {partition.mesh:.3e}")
    return result, error


def cluster_eigenvalues(eigenvalues: np.ndarray, cluster_tol: float) -> list[tuple[float, int]]:
    """Merge sorted eigenvalues whose consecutive gaps are ≤ cluster_tol."""
    clusters: list[list[float]] = []
    for value in eigenvalues:
        if clusters and value - clusters[-1][-1] <= cluster_tol:
            clusters[-1].append(float(value))
        else:
            clusters.append([float(value)])
    return [(float(np.mean(c)), len(c)) for c in clusters]


def describe(A: SelfAdjointOperator, cluster_tol: Optional[float] = None) -> SpectralDescription:
    """
    Finite spectral description of A.

    In finite dimension every spectral point is an isolated eigenvalue of
    finite multiplicity, so the essential list is empty. Tolerances below
    VALUE_TOL are raised to it, since descriptions treat values that close as
    one spectral point.
    """
    cluster_tol = cluster_tol if cluster_tol is not None else Config.cluster_tol()
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    if cluster_tol < VALUE_TOL:
        logger.debug(f"cluster_tol {cluster_tol:.1e} raised to {VALUE_TOL:.1e}")
        cluster_tol = VALUE_TOL
    eigenvalues = np.linalg.eigvalsh(A.entries)
    return SpectralDescription(isolated=tuple(cluster_eigenvalues(eigenvalues, cluster_tol)))


def projection_pair_invariant(P: SelfAdjointOperator, tol: float = SIGN_TOL) -> tuple[int, int]:
    """
    (dim H_P, dim H_P^⊥) for a projection P.

    With P = I this is the dimension invariant of a bare Hilbert space.

    Raises:
        NotAProjection: If ‖P² − P‖_op > tol
    """
    defect = _norm(P.entries @ P.entries - P.entries)
    if defect > tol:
        raise NotAProjection(defect)
    eigenvalues = np.linalg.eigvalsh(P.entries)
    rank = int(np.sum(np.abs(eigenvalues - 1.0) <= tol))
    return rank, P.dim - rank


def projection_pair_embeddable(
    P1: SelfAdjointOperator, P2: SelfAdjointOperator, tol: float = SIGN_TOL
) -> bool:
    """(H₁,P₁) embeds in (H₂,P₂) iff both the range and its complement fit."""
    rank1, corank1 = projection_pair_invariant(P1, tol)
    rank2, corank2 = projection_pair_invariant(P2, tol)
    return rank1 <= rank2 and corank1 <= corank2

