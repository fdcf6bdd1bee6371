"""
Rokhlin towers and the tower-matching conjugacy construction.

Given two block-invariant systems of the same shape, every block gets a tower
of height n for each system. The bases are cut to equal size, the base of T
is matched to the base of S, the matching is transported up the levels by
φ(T^j x) = S^j φ₀(x), and the leftover atoms are matched in index order.
φ T φ⁻¹ and S then disagree only on the top levels and the leftovers, which
gives d(φTφ⁻¹, S) ≤ 1/n + ε.
"""
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..common import as_rational, get_logger
from ..errors import BadSchedule, InternalContradiction, ShapeMismatch, TowerDeficit
from .metrics import uniform_distance
from .models import (
    BlockedPermutationSystem, ConjugacyCertificate, TowerCertificate,
    conjugate, cycle_decomposition,
)

logger = get_logger(__name__)


def genericity_defect(sys: BlockedPermutationSystem, n: int) -> Fraction:
    """μ{x : pi^n(x) = x}; zero for every n means pi is aperiodic."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    fixed = np.count_nonzero(sys.power(n) == np.arange(sys.N))
    return Fraction(int(fixed), sys.N)


def rokhlin_tower(sys: BlockedPermutationSystem, block: int, n: int, epsilon) -> TowerCertificate:
    """
    A tower of height n inside `block` with relative coverage ≥ 1 − ε.

    Every n-th atom along each cycle of the block goes into the base, which
    is the best a cycle of length L can do: ⌊L/n⌋·n of its atoms covered.

    Raises:
        TowerDeficit: If the best coverage is below 1 − ε
    """
    if n < 1:
        raise ValueError(f"tower height must be at least 1, got {n}")
    epsilon = as_rational(epsilon)
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")

    start, stop = sys.block_ranges()[block]
    base = []
    for cycle in cycle_decomposition(sys, block):
        base.extend(cycle[k * n] for k in range(len(cycle) // n))

    coverage = Fraction(n * len(base), stop - start)
    if coverage < 1 - epsilon:
        raise TowerDeficit(coverage, 1 - epsilon, block)

    logger.debug(f"block {block}: tower of height {n} with {len(base)} base atoms, coverage {coverage}")
    return TowerCertificate(block=block, base=tuple(sorted(base)), height=n, coverage=coverage)


def check_tower(sys: BlockedPermutationSystem, tower: TowerCertificate) -> list[str]:
    """
    Re-verify a tower without trusting the search.

    Returns:
        list[str]: Violated conditions (empty if the tower is valid)
    """
    problems = []
    start, stop = sys.block_ranges()[tower.block]
    atoms = np.concatenate(tower.levels(sys)) if tower.base else np.array([], dtype=np.int64)
    if len(np.unique(atoms)) != len(atoms):
        problems.append("tower levels are not pairwise disjoint")
    if np.any((atoms < start) | (atoms >= stop)):
        problems.append("tower leaves its block")
    expected = Fraction(tower.height * len(tower.base), stop - start)
    if tower.coverage != expected:
        problems.append(f"claimed coverage {tower.coverage}, actual {expected}")
    return problems


def _equalize(
    tower: TowerCertificate, other: TowerCertificate, block_size: int
) -> tuple[TowerCertificate, TowerCertificate]:
    """Cut the larger base down to the size of the smaller by dropping its lowest atoms."""
    size = min(len(tower.base), len(other.base))

    def cut(t: TowerCertificate) -> TowerCertificate:
        if len(t.base) == size:
            return t
        return t.model_copy(update={
            "base": t.base[len(t.base) - size:],
            "coverage": Fraction(t.height * size, block_size),
        })

    return cut(tower), cut(other)


def phi_from_towers(
    T: BlockedPermutationSystem,
    S: BlockedPermutationSystem,
    towers: Sequence[tuple[TowerCertificate, TowerCertificate]],
) -> np.ndarray:
    """
    Assemble φ from one pair of equal-size towers per block.

    Base atoms are matched in ascending order, levels by φ(T^j x) = S^j φ₀(x),
    and the atoms outside the towers in ascending order.
    """
    phi = np.full(T.N, -1, dtype=np.int64)
    for (start, stop), (tower_t, tower_s) in zip(T.block_ranges(), towers):
        if len(tower_t.base) != len(tower_s.base) or tower_t.height != tower_s.height:
            raise ValueError(f"towers of block {tower_t.block} do not have equal shape")
        levels_t, levels_s = tower_t.levels(T), tower_s.levels(S)
        for level_t, level_s in zip(levels_t, levels_s):
            phi[level_t] = level_s

        block = np.arange(start, stop)
        rest_t = np.setdiff1d(block, np.concatenate(levels_t))
        rest_s = np.setdiff1d(block, np.concatenate(levels_s))
        phi[rest_t] = rest_s
    return phi


def tower_conjugacy(T: BlockedPermutationSystem, S: BlockedPermutationSystem, n: int, epsilon) -> ConjugacyCertificate:
    """
    Build φ with d_u(φTφ⁻¹, S) ≤ 1/n + ε.

    Block i (counted from 1) gets towers of relative coverage ≥ 1 − ε/2^i.

    Raises:
        ShapeMismatch: If the systems differ in N or blocks
        TowerDeficit: If some block has no tower of the required coverage
    """
    if not T.same_shape(S):
        raise ShapeMismatch(f"cannot match systems of shapes {list(T.blocks)} and {list(S.blocks)}")
    epsilon = as_rational(epsilon)

    towers = []
    for i, (start, stop) in enumerate(T.block_ranges(), start=1):
        budget = epsilon / 2 ** i
        towers.append(_equalize(
            rokhlin_tower(T, i - 1, n, budget), rokhlin_tower(S, i - 1, n, budget), stop - start
        ))
    phi = phi_from_towers(T, S, towers)

    measured = uniform_distance(conjugate(T, phi), S)
    bound = Fraction(1, n) + epsilon
    if measured > bound:
        raise InternalContradiction(f"conjugacy distance {measured} exceeds bound {bound}")

    logger.info(f"tower conjugacy n={n} eps={epsilon}: distance {measured} <= {bound}")
    return ConjugacyCertificate(
        phi=tuple(phi.tolist()),
        height=n,
        epsilon=epsilon,
        bound=bound,
        measured_distance=measured,
        towers=tuple(towers),
    )


def perturbation_sequence(
    T: BlockedPermutationSystem,
    S: BlockedPermutationSystem,
    schedule: Sequence[tuple[int, object]],
) -> list[ConjugacyCertificate]:
    """
    One conjugacy certificate per (n, ε) step, with strictly decreasing bounds.

    Raises:
        BadSchedule: If the schedule is empty or the bounds 1/n + ε do not decrease strictly
    """
    if not schedule:
        raise BadSchedule("schedule is empty")
    steps = [(int(n), as_rational(eps)) for n, eps in schedule]
    bounds = [Fraction(1, n) + eps for n, eps in steps]
    for earlier, later in zip(bounds, bounds[1:]):
        if later >= earlier:
            raise BadSchedule(f"bounds must strictly decrease, got {earlier} then {later}")
    return [tower_conjugacy(T, S, n, eps) for n, eps in steps]
