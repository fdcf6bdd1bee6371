"""
Spectral equivalence, embeddability and approximate unitary equivalence.

Embeddability of descriptions checks the necessary conditions an embedding
of (H₁,A₁) into (H₂,A₂) imposes: spectral values stay spectral, essential
points stay essential, and eigenspaces inject. Approximate unitary
equivalence is constructed cell by cell over a common Riemann partition of
the joint spectral range, as U = ⊕_k U_k between the ranges of the E(Δ_k).
"""
import math
from typing import Optional, Sequence

import numpy as np

from core.config import Config

from ..common import INFINITE, get_logger
from ..errors import CellRankMismatch, DimensionMismatch
from .calculus import eigendecompose, projection_pair_invariant, describe, SIGN_TOL
from .models import VALUE_TOL, OrthogonalMap, RiemannPartition, SelfAdjointOperator, SpectralDescription, UniformGrid

logger = get_logger(__name__)

# Largest number of extra cells tried when nudging boundaries off eigenvalues
_REFINEMENT_ATTEMPTS = 1000


def _values_match(xs: Sequence[float], ys: Sequence[float], tol: float) -> bool:
    return len(xs) == len(ys) and all(abs(x - y) <= tol for x, y in zip(sorted(xs), sorted(ys)))


def _contains(values: Sequence[float], value: float, tol: float) -> bool:
    return any(abs(v - value) <= tol for v in values)


def spectrally_equivalent(
    D1: SpectralDescription, D2: SpectralDescription, tol: float = VALUE_TOL
) -> bool:
    """
    A₁ ∼_σ A₂: equal spectra, equal essential spectra, and equal eigenvalue
    multiplicities at every spectral point outside the essential spectrum.

    Eigenvalue multiplicities at essential points are not compared.
    """
    if len(D1.isolated) != len(D2.isolated):
        return False
    for (v1, m1), (v2, m2) in zip(D1.isolated, D2.isolated):
        if abs(v1 - v2) > tol or m1 != m2:
            return False
    return _values_match(D1.essential_values(), D2.essential_values(), tol)


def description_embeddable(
    D1: SpectralDescription, D2: SpectralDescription, tol: float = VALUE_TOL
) -> bool:
    """
    Necessary conditions for an embedding of (H₁,A₁) into (H₂,A₂).

    σ(D1) ⊆ σ(D2), σ_e(D1) ⊆ σ_e(D2), and every eigenvalue of D1 is an
    eigenvalue of D2 with at least the same multiplicity (INFINITE dominates).
    False is conclusive; True means every check passed.
    """
    spectrum2 = D2.spectrum()
    if not all(_contains(spectrum2, v, tol) for v in D1.spectrum()):
        return False
    essential2 = D2.essential_values()
    if not all(_contains(essential2, v, tol) for v in D1.essential_values()):
        return False
    for value, mult in D1.eigenvalues():
        if D2.eigen_multiplicity(value, tol) < mult:
            return False
    return True


def operator_embeddable(
    A1: SelfAdjointOperator, A2: SelfAdjointOperator, cluster_tol: Optional[float] = None
) -> bool:
    """In finite dimension: the eigenvalue multiset of A1 is contained in that of A2."""
    return description_embeddable(describe(A1, cluster_tol), describe(A2, cluster_tol))


def shift_example(n_terms: int = 20) -> tuple[SpectralDescription, SpectralDescription]:
    """
    Truncations of the diagonal operators x_n ↦ x_n/(n+1) on ℓ₂(N) and on
    ℓ₂(Z) (zero on the negative coordinates).

    Both have isolated eigenvalues 1/(n+1) and 0 as an essential point; 0 is
    not an eigenvalue of the first and has infinite multiplicity in the second.
    """
    isolated = tuple((1.0 / (n + 1), 1) for n in range(n_terms + 1))
    on_naturals = SpectralDescription(isolated=isolated, essential=((0.0, 0),))
    on_integers = SpectralDescription(isolated=isolated, essential=((0.0, INFINITE),))
    return on_naturals, on_integers


def _common_grid(
    eigenvalues1: np.ndarray, eigenvalues2: np.ndarray, epsilon: float, tol: float
) -> UniformGrid:
    left = float(min(eigenvalues1[0], eigenvalues2[0]))
    right = float(max(eigenvalues1[-1], eigenvalues2[-1])) + epsilon / 2
    length = right - left
    # floor(length/ε) + 1 cells give mesh strictly below ε
    n_cells = math.floor(length / epsilon) + 1
    everything = np.concatenate([eigenvalues1, eigenvalues2])

    grid = UniformGrid(left=left, right=right, n_cells=n_cells)
    for _ in range(_REFINEMENT_ATTEMPTS):
        if grid.interior_clearance(everything) > tol:
            return grid
        grid = UniformGrid(left=left, right=right, n_cells=grid.n_cells + 1)

    logger.warning("could not keep partition boundaries off the spectrum; using the last refinement")
    return grid


def common_grid(
    A1: SelfAdjointOperator,
    A2: SelfAdjointOperator,
    epsilon: float,
    tol: Optional[float] = None,
) -> UniformGrid:
    """
    Uniform grid over [m, M + ε/2) with mesh < ε for the joint spectral range
    of A1 and A2, with interior boundaries kept farther than tol from every
    eigenvalue.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    tol = tol if tol is not None else Config.cluster_tol()
    return _common_grid(
        np.linalg.eigvalsh(A1.entries), np.linalg.eigvalsh(A2.entries), epsilon, tol
    )


def common_partition(
    A1: SelfAdjointOperator,
    A2: SelfAdjointOperator,
    epsilon: float,
    tol: Optional[float] = None,
) -> RiemannPartition:
    """
    The common grid as a RiemannPartition.

    Every cell is materialized, about (M − m)/ε of them; approximate_unitary
    works on the grid and never builds this.
    """
    return common_grid(A1, A2, epsilon, tol).to_partition()


def _matched_cells(
    grid: UniformGrid, eigenvalues1: np.ndarray, eigenvalues2: np.ndarray
) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """(cell index, A1 columns, A2 columns) for every occupied cell, ascending."""
    cells1 = grid.index(eigenvalues1)
    cells2 = grid.index(eigenvalues2)
    matched = []
    for k in np.union1d(cells1, cells2):
        columns1 = np.flatnonzero(cells1 == k)
        columns2 = np.flatnonzero(cells2 == k)
        if columns1.size != columns2.size:
            raise CellRankMismatch(grid.cell(int(k)), int(columns1.size), int(columns2.size))
        matched.append((int(k), columns1, columns2))
    return matched


def occupied_cells(
    A1: SelfAdjointOperator,
    A2: SelfAdjointOperator,
    epsilon: float,
    tol: Optional[float] = None,
) -> list[tuple[float, float, int]]:
    """
    (γ_k, μ_k, rank) for every cell of the common grid holding eigenvalues.

    Raises:
        CellRankMismatch: If some cell has unequal eigenvalue counts
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    tol = tol if tol is not None else Config.cluster_tol()
    eigenvalues1 = np.linalg.eigvalsh(A1.entries)
    eigenvalues2 = np.linalg.eigvalsh(A2.entries)
    grid = _common_grid(eigenvalues1, eigenvalues2, epsilon, tol)
    return [
        (*grid.cell(k), int(columns.size))
        for k, columns, _ in _matched_cells(grid, eigenvalues1, eigenvalues2)
    ]


def approximate_unitary(
    A1: SelfAdjointOperator,
    A2: SelfAdjointOperator,
    epsilon: float,
    tol: Optional[float] = None,
) -> OrthogonalMap:
    """
    Orthogonal U with ‖A2 − U·A1·Uᵀ‖_op < ε.

    Each cell Δ_k of a common partition with mesh < ε must hold as many
    eigenvalues of A1 as of A2; U_k then maps the A1 eigenvectors of Δ_k onto
    the A2 eigenvectors of Δ_k in ascending order, and U = ⊕_k U_k. Only the
    occupied cells are visited.

    Raises:
        DimensionMismatch: If the operators act on different dimensions
        CellRankMismatch: If some cell has unequal eigenvalue counts
    """
    if A1.dim != A2.dim:
        raise DimensionMismatch(A1.dim, A2.dim)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    tol = tol if tol is not None else Config.cluster_tol()

    eigenvalues1, Q1 = eigendecompose(A1)
    eigenvalues2, Q2 = eigendecompose(A2)
    grid = _common_grid(eigenvalues1, eigenvalues2, epsilon, tol)

    U = np.zeros((A1.dim, A1.dim))
    matched = _matched_cells(grid, eigenvalues1, eigenvalues2)
    for _, columns1, columns2 in matched:
        U += Q2.entries[:, columns2] @ Q1.entries[:, columns1].T

    logger.debug(f"approximate unitary assembled from {len(matched)} of {grid.n_cells} cells (mesh {grid.width:.3e})")
    return OrthogonalMap(entries=U)


def unitary_residual(
    A1: SelfAdjointOperator, A2: SelfAdjointOperator, U: OrthogonalMap
) -> float:
    """‖A2 − U·A1·Uᵀ‖_op."""
    return float(np.linalg.norm(A2.entries - U.entries @ A1.entries @ U.entries.T, 2))


def approximate_unitary_sequence(
    A1: SelfAdjointOperator,
    A2: SelfAdjointOperator,
    epsilons: Sequence[float],
    tol: Optional[float] = None,
) -> list[tuple[float, OrthogonalMap, float]]:
    """
    One map per ε of a strictly decreasing sequence, each with its residual.

    Returns:
        list: (ε, U_ε, ‖A2 − U_ε·A1·U_εᵀ‖) in the order given
    """
    if not epsilons:
        raise ValueError("at least one epsilon is required")
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilons must be strictly decreasing")

    sequence = []
    for epsilon in epsilons:
        U = approximate_unitary(A1, A2, epsilon, tol)
        sequence.append((epsilon, U, unitary_residual(A1, A2, U)))
    return sequence


def projection_pair_isomorphism(
    P1: SelfAdjointOperator, P2: SelfAdjointOperator, tol: float = SIGN_TOL
) -> OrthogonalMap:
    """
    U = U₁ ⊕ U₂ carrying range(P₁) onto range(P₂) and the complements onto
    each other, so that U·P₁·Uᵀ = P₂.

    Raises:
        NotAProjection, DimensionMismatch, CellRankMismatch (unequal pairs)
    """
    projection_pair_invariant(P1, tol)
    projection_pair_invariant(P2, tol)
    # Spectra sit in {0, 1}; any ε < 1 separates them into two cells
    return approximate_unitary(P1, P2, 0.5)
