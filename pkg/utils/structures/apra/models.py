"""
Finite blocked permutation systems and the certificates built on them.

A system is an atomless probability algebra approximated by N atoms of
measure 1/N, partitioned into consecutive homogeneous blocks, together with
an automorphism given as a permutation that leaves every block invariant.
"""
from fractions import Fraction
from typing import Any, ClassVar, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt, model_validator
from pydantic_core import PydanticCustomError

from ..common import Rational


class BlockedPermutationSystem(BaseModel):
    """N atoms, consecutive block sizes and a block-invariant permutation pi."""

    N: PositiveInt
    blocks: tuple[PositiveInt, ...]
    pi: tuple[NonNegativeInt, ...]

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_invariants(self) -> "BlockedPermutationSystem":
        if sum(self.blocks) != self.N:
            raise PydanticCustomError(
                "block sizes", "block sizes sum to {total}, expected N = {n}",
                {"total": sum(self.blocks), "n": self.N},
            )
        if len(self.pi) != self.N or sorted(self.pi) != list(range(self.N)):
            raise PydanticCustomError("permutation", "pi is not a permutation of 0..N-1")
        for start, stop in self.block_ranges():
            if any(not (start <= self.pi[x] < stop) for x in range(start, stop)):
                raise PydanticCustomError(
                    "block invariance", "pi does not map block [{start}, {stop}) onto itself",
                    {"start": start, "stop": stop},
                )
        return self

    def block_ranges(self) -> list[tuple[int, int]]:
        """Half-open atom ranges of the blocks, in order."""
        bounds = np.concatenate(([0], np.cumsum(self.blocks))).tolist()
        return list(zip(bounds[:-1], bounds[1:]))

    def block_weight(self, block: int) -> Fraction:
        return Fraction(self.blocks[block], self.N)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.pi, dtype=np.int64)

    def inverse(self) -> np.ndarray:
        inv = np.empty(self.N, dtype=np.int64)
        inv[self.array] = np.arange(self.N)
        return inv

    def power(self, n: int) -> np.ndarray:
        """pi^n as an index array (n ≥ 0)."""
        result = np.arange(self.N)
        step = self.array
        while n:
            if n & 1:
                result = step[result]
            step = step[step]
            n >>= 1
        return result

    def same_shape(self, other: "BlockedPermutationSystem") -> bool:
        return self.N == other.N and self.blocks == other.blocks

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode='json')


class TowerCertificate(BaseModel):
    """
    A Rokhlin tower inside one block: base c with c, pi(c), …, pi^{n-1}(c)
    pairwise disjoint. Coverage is n·|c| relative to the block size.
    """

    block: NonNegativeInt
    base: tuple[NonNegativeInt, ...]
    height: PositiveInt
    coverage: Rational

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    def levels(self, sys: BlockedPermutationSystem) -> list[np.ndarray]:
        """The n levels c, pi(c), …, pi^{n-1}(c) as atom arrays."""
        level = np.asarray(self.base, dtype=np.int64)
        pi = sys.array
        out = []
        for _ in range(self.height):
            out.append(level)
            level = pi[level]
        return out


class ConjugacyCertificate(BaseModel):
    """The map phi with the distance bound it was built for and the distance it achieves."""

    phi: tuple[NonNegativeInt, ...]
    height: PositiveInt
    epsilon: Rational
    bound: Rational
    measured_distance: Rational
    towers: tuple[tuple[TowerCertificate, TowerCertificate], ...] = ()

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_invariants(self) -> "ConjugacyCertificate":
        if sorted(self.phi) != list(range(len(self.phi))):
            raise PydanticCustomError("bijection", "phi is not a bijection")
        if self.measured_distance > self.bound:
            raise PydanticCustomError(
                "distance bound", "measured distance {d} exceeds bound {b}",
                {"d": str(self.measured_distance), "b": str(self.bound)},
            )
        return self


class SupDistance(BaseModel):
    """
    The metric sup_a μ(T(a) △ S(a)) as an interval [low, high], low attained
    by the witness subset. exact means low == high.
    """

    low: Rational
    high: Rational
    exact: bool
    witness: Optional[tuple[NonNegativeInt, ...]] = None

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError("sup distance is only known within an interval")
        return self.low


def permutation_cycles(perm: np.ndarray, atoms: Optional[range] = None) -> list[list[int]]:
    """Cycles of an index permutation, each starting at its smallest atom, by smallest atom."""
    atoms = range(len(perm)) if atoms is None else atoms
    seen = np.zeros(len(perm), dtype=bool)
    cycles = []
    for start in atoms:
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(int(x))
            x = perm[x]
        cycles.append(cycle)
    return cycles


def cycle_decomposition(sys: BlockedPermutationSystem, block: Optional[int] = None) -> list[list[int]]:
    """Cycles of pi, restricted to one block when `block` is given."""
    if block is None:
        return permutation_cycles(sys.array)
    start, stop = sys.block_ranges()[block]
    return permutation_cycles(sys.array, range(start, stop))


def conjugate(sys: BlockedPermutationSystem, phi) -> BlockedPermutationSystem:
    """The system phi ∘ pi ∘ phi⁻¹ (phi must preserve the blocks)."""
    phi = np.asarray(phi, dtype=np.int64)
    pi = np.empty(sys.N, dtype=np.int64)
    pi[phi] = phi[sys.array]
    return BlockedPermutationSystem(N=sys.N, blocks=sys.blocks, pi=tuple(pi.tolist()))


def from_cycles(N: int, blocks, cycles) -> BlockedPermutationSystem:
    """Build a system from explicit cycles; atoms on no cycle are fixed."""
    pi = list(range(N))
    for cycle in cycles:
        for x, y in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            pi[x] = y
    return BlockedPermutationSystem(N=N, blocks=tuple(blocks), pi=tuple(pi))


def cycle_system(N: int) -> BlockedPermutationSystem:
    """The single-block N-cycle x -> x+1 mod N."""
    return from_cycles(N, (N,), [list(range(N))])


def random_system(
    rng: np.random.Generator,
    blocks,
    min_cycle: int = 1,
    step: int = 1,
) -> BlockedPermutationSystem:
    """
    A random block-invariant permutation.

    Every block is shuffled and cut into cycles of length at least
    `min_cycle`; lengths are multiples of `step` except for the last cycle of
    a block, which absorbs the remainder. A block smaller than `min_cycle`
    becomes a single cycle.
    """
    N = int(sum(blocks))
    unit = max(1, -(-min_cycle // step)) * step
    cycles = []
    offset = 0
    for size in blocks:
        atoms = (offset + rng.permutation(size)).tolist()
        remaining = size
        while remaining:
            if remaining < 2 * unit:
                length = remaining
            else:
                length = step * int(rng.integers(unit // step, (remaining - unit) // step + 1))
            cut = size - remaining
            cycles.append(atoms[cut:cut + length])
            remaining -= length
        offset += size
    return from_cycles(N, blocks, cycles)
