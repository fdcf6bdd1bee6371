#!/usr/bin/env python3
"""
Tests for the spectral calculus and approximate unitary equivalence.
"""
import time

import numpy as np
import pydantic
import pytest

from utils.structures.common import INFINITE
from utils.structures.errors import (
    CellRankMismatch, DimensionMismatch, NotAProjection, NotPositive, PartitionDoesNotCoverSpectrum,
)
from utils.structures.symspec import (
    OrthogonalMap, RiemannPartition, SelfAdjointOperator, SpectralDescription, UniformGrid,
    abs_operator, approximate_unitary, approximate_unitary_sequence, common_grid,
    common_partition, describe, occupied_cells,
    description_embeddable, eigendecompose, identity_decomposition, operator_embeddable,
    operator_norm, positive_projection, positive_sqrt, projection_pair_embeddable,
    projection_pair_invariant, projection_pair_isomorphism, shift_example,
    spectral_riemann_sum, spectrally_equivalent, unitary_residual,
)
from workflows.desk_checks.utils import (
    conjugate_pair, random_orthogonal, random_psd, random_symmetric, small_descriptions,
)

PAIR = SelfAdjointOperator(entries=[[2.0, 1.0], [1.0, 2.0]])


def _close(A: SelfAdjointOperator, expected, tol: float = 1e-8) -> bool:
    return np.allclose(A.entries, np.asarray(expected, dtype=float), atol=tol)


# Models

def test_operator_rejects_asymmetric_matrix():
    with pytest.raises(pydantic.ValidationError) as excinfo:
        SelfAdjointOperator(entries=[[1.0, 2.0], [0.0, 1.0]])
    assert excinfo.value.errors()[0]["type"] == "symmetry"


def test_operator_accepts_wire_form():
    A = SelfAdjointOperator.model_validate({"dim": 2, "rows": [[1, 0], [0, 2]]})
    assert A.dim == 2
    assert A.to_payload() == {"dim": 2, "rows": [[1.0, 0.0], [0.0, 2.0]]}


def test_operator_rejects_wrong_dim():
    with pytest.raises(pydantic.ValidationError) as excinfo:
        SelfAdjointOperator.model_validate({"dim": 3, "rows": [[1, 0], [0, 2]]})
    assert excinfo.value.errors()[0]["type"] == "dimension"


def test_description_rejects_infinite_isolated_multiplicity():
    with pytest.raises(pydantic.ValidationError) as excinfo:
        SpectralDescription(isolated=((1.0, "inf"),))
    assert excinfo.value.errors()[0]["type"] == "finite isolated multiplicity"


def test_description_rejects_repeated_values():
    with pytest.raises(pydantic.ValidationError):
        SpectralDescription(isolated=((1.0, 1),), essential=((1.0, 0),))


def test_description_serializes_infinite_multiplicity():
    D = SpectralDescription(essential=((0.0, INFINITE),))
    assert D.to_payload()["essential"] == [[0.0, "inf"]]
    assert SpectralDescription.model_validate(D.to_payload()) == D


def test_partition_requires_consecutive_cells():
    with pytest.raises(pydantic.ValidationError):
        RiemannPartition(left=0.0, right=2.0, cells=((0.0, 1.0), (1.5, 2.0)), tags=(0.5, 1.75))


# Calculus

def test_eigendecompose_diagonal():
    eigenvalues, Q = eigendecompose(SelfAdjointOperator.diag(3, 1))
    assert np.allclose(eigenvalues, [1, 3])
    assert np.allclose(np.abs(Q.entries), [[0, 1], [1, 0]])


def test_eigendecompose_pair():
    eigenvalues, _ = eigendecompose(PAIR)
    assert np.allclose(eigenvalues, [1, 3])


def test_eigendecompose_reconstructs(rng):
    A = random_symmetric(rng, 8)
    eigenvalues, Q = eigendecompose(A)
    residual = np.linalg.norm(Q.entries @ np.diag(eigenvalues) @ Q.entries.T - A.entries, 2)
    assert residual <= 1e-10


@pytest.mark.parametrize("A, expected", [
    (SelfAdjointOperator.diag(2, -3), 3.0),
    (SelfAdjointOperator.identity(4), 1.0),
    (SelfAdjointOperator(entries=[[0.0, 1.0], [1.0, 0.0]]), 1.0),
])
def test_operator_norm(A, expected):
    assert operator_norm(A) == pytest.approx(expected)


def test_positive_sqrt_examples():
    assert _close(positive_sqrt(SelfAdjointOperator.identity(3)), np.eye(3))
    assert _close(positive_sqrt(SelfAdjointOperator.diag(4, 9)), np.diag([2, 3]))
    S = positive_sqrt(PAIR)
    assert np.linalg.norm(S.entries @ S.entries - PAIR.entries, 2) <= 1e-8


def test_positive_sqrt_of_zero():
    assert _close(positive_sqrt(SelfAdjointOperator.zero(2)), np.zeros((2, 2)))


def test_positive_sqrt_random_with_kernel(rng):
    for kernel in (0, 1, 2):
        P = random_psd(rng, 6, kernel)
        S = positive_sqrt(P)
        assert np.linalg.norm(S.entries @ S.entries - P.entries, 2) <= 1e-8 * max(1.0, operator_norm(P))
        assert np.linalg.eigvalsh(S.entries)[0] >= -1e-8


def _sqrt_oracle(P: SelfAdjointOperator) -> np.ndarray:
    values, vectors = np.linalg.eigh(P.entries)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.T


def test_positive_sqrt_matches_eigen_oracle(rng):
    for _ in range(100):
        dim = int(rng.integers(1, 11))
        P = random_psd(rng, dim, int(rng.integers(0, dim)))
        S = positive_sqrt(P)
        assert np.linalg.norm(S.entries - _sqrt_oracle(P), 2) <= 1e-7


def test_positive_sqrt_small_eigenvalue():
    # Far too slow for the recursion alone: contraction 1 − √x per step
    P = SelfAdjointOperator.diag(1, 3e-8)
    S = positive_sqrt(P)
    assert np.linalg.norm(S.entries @ S.entries - P.entries, 2) <= 1e-8
    assert _close(S, np.diag([1.0, np.sqrt(3e-8)]), tol=1e-7)


def test_positive_sqrt_rejects_negative():
    with pytest.raises(NotPositive):
        positive_sqrt(SelfAdjointOperator.diag(1, -1))


def test_abs_operator():
    assert _close(abs_operator(SelfAdjointOperator.diag(1, -1)), np.eye(2))
    assert _close(abs_operator(SelfAdjointOperator.zero(3)), np.zeros((3, 3)))
    assert _close(abs_operator(SelfAdjointOperator(entries=[[0.0, 2.0], [2.0, 0.0]])), 2 * np.eye(2))


def test_positive_projection_examples():
    assert _close(positive_projection(SelfAdjointOperator.diag(1, -1, 0)), np.diag([1, 0, 1]))
    assert _close(positive_projection(SelfAdjointOperator.diag(-1, -1)), np.zeros((2, 2)))
    assert _close(positive_projection(SelfAdjointOperator.identity(2)), np.eye(2))


def test_positive_projection_properties(rng):
    A = random_symmetric(rng, 6)
    E = positive_projection(A).entries
    a = A.entries
    assert np.linalg.norm(E @ a - a @ E, 2) <= 1e-9
    assert np.linalg.eigvalsh((a @ E + (a @ E).T) / 2)[0] >= -1e-9
    negative = a @ (np.eye(6) - E)
    assert np.linalg.eigvalsh((negative + negative.T) / 2)[-1] <= 1e-9


def test_identity_decomposition():
    A = SelfAdjointOperator.diag(1, 2)
    assert _close(identity_decomposition(A, 1.5), np.diag([1, 0]))
    assert _close(identity_decomposition(A, 0.5), np.zeros((2, 2)))
    assert _close(identity_decomposition(A, 3), np.eye(2))


def test_identity_decomposition_is_monotone(rng):
    for _ in range(20):
        A = random_symmetric(rng, int(rng.integers(1, 8)))
        lam, mu = np.sort(rng.uniform(-4.0, 4.0, 2))
        E_lam = identity_decomposition(A, lam).entries
        E_mu = identity_decomposition(A, mu).entries
        assert np.linalg.norm(E_lam @ E_mu - E_lam, 2) <= 1e-9


def test_riemann_sum_exact_cells():
    A = SelfAdjointOperator.diag(0.1, 0.6)
    partition = RiemannPartition.from_bounds([0.1, 0.6, 0.7], tags=[0.1, 0.6])
    _, error = spectral_riemann_sum(A, partition)
    assert error == pytest.approx(0.0, abs=1e-15)


def test_riemann_sum_midpoints():
    A = SelfAdjointOperator.diag(0.1, 0.6)
    partition = RiemannPartition.uniform(0.0, 1.0, 2)
    assert partition.mesh == 0.5
    _, error = spectral_riemann_sum(A, partition)
    assert error <= 0.5


def test_riemann_sum_outside_range():
    with pytest.raises(PartitionDoesNotCoverSpectrum):
        spectral_riemann_sum(SelfAdjointOperator.diag(0.1, 2.0), RiemannPartition.uniform(0.0, 1.0, 4))


def test_describe_examples():
    assert describe(SelfAdjointOperator.diag(1, 1, 2), 1e-6).isolated == ((1.0, 2), (2.0, 1))
    clustered = describe(SelfAdjointOperator.diag(1, 1 + 1e-9), 1e-6)
    assert len(clustered.isolated) == 1 and clustered.isolated[0][1] == 2
    assert describe(SelfAdjointOperator.zero(3), 1e-6).isolated == ((0.0, 3),)


def test_describe_with_tolerance_below_value_resolution():
    described = describe(SelfAdjointOperator.diag(1, 1 + 1e-10), 1e-12)
    assert len(described.isolated) == 1
    assert described.isolated[0][1] == 2


@pytest.mark.parametrize("P, expected", [
    (SelfAdjointOperator.identity(3), (3, 0)),
    (SelfAdjointOperator.zero(4), (0, 4)),
    (SelfAdjointOperator.diag(1, 1, 0), (2, 1)),
])
def test_projection_pair_invariant(P, expected):
    assert projection_pair_invariant(P) == expected


def test_projection_pair_invariant_rejects_non_projection():
    with pytest.raises(NotAProjection):
        projection_pair_invariant(SelfAdjointOperator.diag(0.5, 1))


def test_projection_pairs():
    P1 = SelfAdjointOperator.diag(1, 0, 0)
    P2 = SelfAdjointOperator(entries=[[0.5, 0.5, 0.0], [0.5, 0.5, 0.0], [0.0, 0.0, 0.0]])
    assert projection_pair_embeddable(P1, P2)
    U = projection_pair_isomorphism(P1, P2)
    assert unitary_residual(P1, P2, U) <= 1e-9
    assert not projection_pair_embeddable(SelfAdjointOperator.diag(1, 1, 0), P2)


# Equivalence

def test_shift_example_is_equivalent_but_not_isomorphic():
    on_naturals, on_integers = shift_example(20)
    assert spectrally_equivalent(on_naturals, on_integers)
    assert description_embeddable(on_naturals, on_integers)
    assert not description_embeddable(on_integers, on_naturals)


def test_spectral_equivalence_basics():
    D = SpectralDescription(isolated=((1.0, 1),))
    assert spectrally_equivalent(D, D)
    assert not spectrally_equivalent(D, SpectralDescription(isolated=((1.0, 2),)))


def test_description_embeddable_basics():
    D = SpectralDescription(isolated=((1.0, 2),))
    assert description_embeddable(D, D)
    assert not description_embeddable(SpectralDescription(isolated=((1.0, 3),)), D)


def test_operator_embeddable():
    assert operator_embeddable(SelfAdjointOperator.diag(1, 2), SelfAdjointOperator.diag(1, 2, 2))
    assert not operator_embeddable(SelfAdjointOperator.diag(1, 3), SelfAdjointOperator.diag(1, 2, 2))


def test_bi_embeddable_small_descriptions_are_equivalent():
    descriptions = list(small_descriptions())
    for d1 in descriptions:
        for d2 in descriptions:
            if description_embeddable(d1, d2) and description_embeddable(d2, d1):
                assert spectrally_equivalent(d1, d2)


def test_approximate_unitary_identical():
    A = SelfAdjointOperator.diag(1, 2)
    U = approximate_unitary(A, A, 0.1)
    assert unitary_residual(A, A, U) <= 1e-12


def test_approximate_unitary_rotated():
    A1 = SelfAdjointOperator.diag(1, 2)
    A2 = SelfAdjointOperator(entries=[[1.5, 0.5], [0.5, 1.5]])
    U = approximate_unitary(A1, A2, 1e-6)
    assert unitary_residual(A1, A2, U) <= 1e-9
    assert np.allclose(U.entries @ U.entries.T, np.eye(2))


def test_approximate_unitary_rank_mismatch():
    with pytest.raises(CellRankMismatch):
        approximate_unitary(SelfAdjointOperator.diag(1, 2), SelfAdjointOperator.diag(1, 3), 0.5)


def test_approximate_unitary_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        approximate_unitary(SelfAdjointOperator.diag(1, 2), SelfAdjointOperator.diag(1, 2, 3), 0.5)


def test_approximate_unitary_random_pairs(rng):
    elapsed = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 9))
        A, B = conjugate_pair(rng, dim)
        for epsilon in (1e-2, 1e-6):
            start = time.perf_counter()
            U = approximate_unitary(A, B, epsilon)
            elapsed += time.perf_counter() - start
            assert unitary_residual(A, B, U) < epsilon
    assert elapsed < 1.0


def _unit_spectrum(rng, dim: int) -> SelfAdjointOperator:
    Q = random_orthogonal(rng, dim)
    return SelfAdjointOperator.symmetrized(Q @ np.diag(rng.uniform(0.0, 1.0, dim)) @ Q.T)


def test_approximate_unitary_residual_invariant_under_conjugation(rng):
    for _ in range(20):
        dim = int(rng.integers(1, 7))
        A1, A2 = _unit_spectrum(rng, dim), _unit_spectrum(rng, dim)
        # Spectra inside [0, 1) with ε = 2 leave a single cell, so ranks match
        residual = unitary_residual(A1, A2, approximate_unitary(A1, A2, 2.0))
        V = OrthogonalMap(entries=random_orthogonal(rng, dim))
        B1, B2 = V.conjugate(A1), V.conjugate(A2)
        moved = unitary_residual(B1, B2, approximate_unitary(B1, B2, 2.0))
        assert abs(residual - moved) <= 1e-9


def test_uniform_grid_matches_partition(rng):
    grid = UniformGrid(left=-1.3, right=2.7, n_cells=37)
    partition = grid.to_partition()
    values = np.concatenate([rng.uniform(-1.3, 2.7, 200), [lo for lo, _ in partition.cells]])
    for value, k in zip(values, grid.index(values)):
        lo, hi = partition.cells[k]
        assert lo <= value < hi
        assert grid.cell(int(k)) == (lo, hi)


def test_uniform_grid_clearance():
    grid = UniformGrid(left=0.0, right=1.0, n_cells=4)
    # Nearest interior boundaries: 0.25 for 0.0 and 0.1, 0.75 for 0.9
    assert grid.interior_clearance(np.array([0.0, 0.1, 0.9])) == pytest.approx(0.15)
    assert grid.interior_clearance(np.array([0.5])) == 0.0
    assert UniformGrid(left=0.0, right=1.0, n_cells=1).interior_clearance(np.array([0.5])) == np.inf


def test_occupied_cells_at_fine_mesh(rng):
    A, B = conjugate_pair(rng, 8)
    cells = occupied_cells(A, B, 1e-9, tol=1e-12)
    assert sum(rank for _, _, rank in cells) == 8
    assert all(hi - lo < 1e-9 for lo, hi, _ in cells)
    grid = common_grid(A, B, 1e-9, tol=1e-12)
    assert grid.n_cells > 10**8 and grid.width < 1e-9


def test_common_partition_mesh(rng):
    A, B = conjugate_pair(rng, 5)
    partition = common_partition(A, B, 0.1)
    assert partition.mesh < 0.1
    eigenvalues = np.linalg.eigvalsh(A.entries)
    assert partition.left <= eigenvalues[0] and eigenvalues[-1] < partition.right


def test_approximate_unitary_sequence(rng):
    A, B = conjugate_pair(rng, 4)
    sequence = approximate_unitary_sequence(A, B, [1e-1, 1e-3, 1e-6])
    assert [eps for eps, _, _ in sequence] == [1e-1, 1e-3, 1e-6]
    assert all(residual < eps for eps, _, residual in sequence)
    with pytest.raises(ValueError):
        approximate_unitary_sequence(A, B, [1e-3, 1e-1])


def test_orthogonal_map_rejects_non_orthogonal():
    with pytest.raises(pydantic.ValidationError):
        OrthogonalMap(entries=[[1.0, 1.0], [0.0, 1.0]])
