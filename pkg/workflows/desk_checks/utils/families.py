"""
Instance families for the desk-scale sweeps.

The exhaustive families are small enough to enumerate completely; the
random families draw everything from the generator they are given.
"""
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator

import numpy as np

from utils.structures.apra import BlockedPermutationSystem, random_system
from utils.structures.common import INFINITE
from utils.structures.maharam import MaharamInvariant
from utils.structures.randomization import DensityProfile, ModelCatalog
from utils.structures.symspec import SelfAdjointOperator, SpectralDescription


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix)."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_symmetric(rng: np.random.Generator, dim: int) -> SelfAdjointOperator:
    return SelfAdjointOperator.symmetrized(rng.standard_normal((dim, dim)))


def random_psd(rng: np.random.Generator, dim: int, kernel: int = 0) -> SelfAdjointOperator:
    """Q·diag(λ)·Qᵀ with λ ≥ 0, the first `kernel` eigenvalues exactly zero."""
    values = rng.uniform(0.1, 5.0, dim)
    values[:kernel] = 0.0
    Q = random_orthogonal(rng, dim)
    return SelfAdjointOperator.symmetrized(Q @ np.diag(values) @ Q.T)


def conjugate_pair(rng: np.random.Generator, dim: int) -> tuple[SelfAdjointOperator, SelfAdjointOperator]:
    """(A, QAQᵀ) for a random symmetric A and random orthogonal Q."""
    A = random_symmetric(rng, dim)
    Q = random_orthogonal(rng, dim)
    return A, SelfAdjointOperator.symmetrized(Q @ A.entries @ Q.T)


# Per spectral value: absent, isolated of multiplicity 1 or 2, essential
# with infinite eigenvalue multiplicity, essential without eigenvectors
_DESCRIPTION_STATES = ("absent", 1, 2, "essential-eigen", "essential")


def small_descriptions(values=(0.0, 1.0, 2.0)) -> Iterator[SpectralDescription]:
    """Every non-empty description over `values` with the states above."""
    for states in product(_DESCRIPTION_STATES, repeat=len(values)):
        isolated = tuple((v, s) for v, s in zip(values, states) if isinstance(s, int))
        essential = tuple(
            (v, INFINITE if s == "essential-eigen" else 0)
            for v, s in zip(values, states) if s in ("essential-eigen", "essential")
        )
        if isolated or essential:
            yield SpectralDescription(isolated=isolated, essential=essential)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write total as `parts` positive integers."""
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def eighth_invariants(max_blocks: int = 4, max_kappa: int = 3, unit: int = 8) -> list[MaharamInvariant]:
    """Normalized atomless invariants with distinct kappas ≤ max_kappa and weights in {k/unit}."""
    invariants = []
    for size in range(1, max_blocks + 1):
        for kappas in combinations(range(max_kappa, -1, -1), size):
            for weights in _compositions(unit, size):
                invariants.append(MaharamInvariant(
                    blocks=tuple((Fraction(w, unit), k) for w, k in zip(weights, kappas))
                ))
    return invariants


def quarter_profiles(catalog: ModelCatalog, unit: int = 4) -> list[DensityProfile]:
    """Every profile on the catalog with densities in {k/unit}."""
    ids = catalog.ids
    profiles = []
    for cuts in combinations(range(unit + len(ids) - 1), len(ids) - 1):
        bounds = (-1,) + cuts + (unit + len(ids) - 1,)
        counts = [b - a - 1 for a, b in zip(bounds, bounds[1:])]
        rho = {i: Fraction(c, unit) for i, c in zip(ids, counts) if c}
        profiles.append(DensityProfile(catalog=catalog, rho=rho))
    return profiles


def random_tower_instance(
    rng: np.random.Generator, max_blocks: int = 4, max_block_size: int = 2500
) -> tuple[BlockedPermutationSystem, BlockedPermutationSystem, int, Fraction]:
    """
    Two independent systems on the same random blocks, with (n, ε) chosen so
    that every block admits towers of the required coverage.

    Cycles have length ≥ 4n in multiples of n, except one remainder cycle per
    block; block sizes of at least n·2^k/ε keep that remainder within budget.
    """
    n = int(rng.choice([2, 4, 8]))
    epsilon = Fraction(1, int(rng.choice([4, 8])))
    k = int(rng.integers(1, max_blocks + 1))
    smallest = int(n * 2 ** k / epsilon)
    blocks = tuple(int(s) for s in rng.integers(smallest, max(smallest, max_block_size) + 1, size=k))
    T = random_system(rng, blocks, min_cycle=4 * n, step=n)
    S = random_system(rng, blocks, min_cycle=4 * n, step=n)
    return T, S, n, epsilon


def random_small_pair(
    rng: np.random.Generator, max_atoms: int = 12
) -> tuple[BlockedPermutationSystem, BlockedPermutationSystem]:
    """Two random systems on a random block structure with at most max_atoms atoms."""
    N = int(rng.integers(1, max_atoms + 1))
    n_cuts = int(rng.integers(0, min(3, N - 1) + 1))
    cuts = sorted(int(c) for c in rng.choice(np.arange(1, N), size=n_cuts, replace=False)) if n_cuts else []
    bounds = [0] + cuts + [N]
    blocks = tuple(b - a for a, b in zip(bounds, bounds[1:]))
    return random_system(rng, blocks), random_system(rng, blocks)
