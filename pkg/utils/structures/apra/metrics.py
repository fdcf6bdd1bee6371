"""
The two automorphism metrics on finite systems.

d_u counts the atoms where the permutations disagree. d is the supremum of
μ(T(a) △ S(a)) over all elements a of the algebra, which for these systems
are exactly the atom subsets. d ≤ d_u always holds.
"""
from fractions import Fraction

import numpy as np

from core.config import Config
from ..common import get_logger
from ..errors import ShapeMismatch
from .models import BlockedPermutationSystem, SupDistance, permutation_cycles

logger = get_logger(__name__)


def _check_shape(T: BlockedPermutationSystem, S: BlockedPermutationSystem) -> None:
    if not T.same_shape(S):
        raise ShapeMismatch(
            f"systems differ in shape: N={T.N} blocks={list(T.blocks)} vs N={S.N} blocks={list(S.blocks)}"
        )


def uniform_distance(T: BlockedPermutationSystem, S: BlockedPermutationSystem) -> Fraction:
    """μ{x : T(x) ≠ S(x)}."""
    _check_shape(T, S)
    return Fraction(int(np.count_nonzero(T.array != S.array)), T.N)


def symmetric_difference_measure(
    T: BlockedPermutationSystem, S: BlockedPermutationSystem, subset
) -> Fraction:
    """μ(T(a) △ S(a)) for the atom subset a."""
    atoms = np.asarray(list(subset), dtype=np.int64)
    image_t = np.zeros(T.N, dtype=bool)
    image_s = np.zeros(T.N, dtype=bool)
    image_t[T.array[atoms]] = True
    image_s[S.array[atoms]] = True
    return Fraction(int(np.count_nonzero(image_t ^ image_s)), T.N)


def _enumerate(T: BlockedPermutationSystem, S: BlockedPermutationSystem) -> SupDistance:
    N = T.N
    masks = np.arange(1 << N, dtype=np.int64)
    image_t = np.zeros_like(masks)
    image_s = np.zeros_like(masks)
    for x in range(N):
        bit = (masks >> x) & 1
        image_t |= bit << T.pi[x]
        image_s |= bit << S.pi[x]
    diff = image_t ^ image_s
    counts = np.zeros_like(masks)
    for x in range(N):
        counts += (diff >> x) & 1
    best = int(counts.argmax())
    value = Fraction(int(counts[best]), N)
    witness = tuple(x for x in range(N) if (best >> x) & 1)
    return SupDistance(low=value, high=value, exact=True, witness=witness)


def _alternating_subset(T: BlockedPermutationSystem, S: BlockedPermutationSystem) -> list[int]:
    """
    Every other atom along the cycles of σ = S⁻¹T.

    μ(T(a) △ S(a)) = μ(σ(a) △ a) = 2·μ{x ∈ a : σ(x) ∉ a}, and on a cycle of
    length L at most ⌊L/2⌋ atoms of a can leave a. This subset attains that
    on every cycle, so it realizes the supremum.
    """
    sigma = S.inverse()[T.array]
    subset = []
    for cycle in permutation_cycles(sigma):
        subset.extend(cycle[0:2 * (len(cycle) // 2):2])
    return subset


def sup_distance(T: BlockedPermutationSystem, S: BlockedPermutationSystem) -> SupDistance:
    """
    sup_a μ(T(a) △ S(a)) over atom subsets a.

    Up to SBKIT_SUP_EXACT_MAX_N atoms every subset is enumerated. Above that
    the supremum is read off the cycles of S⁻¹T as Σ 2⌊L/2⌋ / N, with the
    alternating subset as witness.

    Raises:
        ShapeMismatch: If the systems differ in N or blocks
    """
    _check_shape(T, S)
    if T.N <= Config.sup_exact_max_n():
        return _enumerate(T, S)

    logger.info(f"N={T.N} above the enumeration limit; using the cycles of S⁻¹T")
    subset = _alternating_subset(T, S)
    value = symmetric_difference_measure(T, S, subset)
    return SupDistance(low=value, high=value, exact=True, witness=tuple(sorted(subset)))
