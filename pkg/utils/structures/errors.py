"""
Error hierarchy for sb-kit.

Every error an operation can signal has its own class so callers (and the
CLI) can tell a conclusive negative answer from bad input or an internal
failure. Errors caused by bad input also subclass ValueError.
"""
from fractions import Fraction
from typing import Optional


class SbKitError(Exception):
    """Root of all sb-kit errors."""


class InternalNoConvergence(SbKitError):
    """A numerical iteration did not converge within its cap."""


class InternalContradiction(SbKitError):
    """A theorem checked at runtime was contradicted. Must be unreachable."""


class NotPositive(SbKitError, ValueError):
    """Operator has an eigenvalue below the positivity tolerance."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"operator is not positive: min eigenvalue {min_eigenvalue:.3e}")


class PartitionDoesNotCoverSpectrum(SbKitError, ValueError):
    """Some eigenvalue lies outside the partition range."""

    def __init__(self, eigenvalue: float, left: float, right: float):
        self.eigenvalue = eigenvalue
        super().__init__(
            f"eigenvalue {eigenvalue!r} outside partition range [{left!r}, {right!r})"
        )


class DimensionMismatch(SbKitError, ValueError):
    """Two operators act on spaces of different dimension."""

    def __init__(self, dim1: int, dim2: int):
        self.dim1, self.dim2 = dim1, dim2
        super().__init__(f"dimension mismatch: {dim1} vs {dim2}")


class CellRankMismatch(SbKitError):
    """A partition cell holds different eigenvalue counts for the two operators."""

    def __init__(self, cell: tuple[float, float], rank1: int, rank2: int):
        self.cell, self.rank1, self.rank2 = cell, rank1, rank2
        super().__init__(
            f"cell [{cell[0]:.6g}, {cell[1]:.6g}) has rank {rank1} vs {rank2}"
        )


class NotAProjection(SbKitError, ValueError):
    """Matrix is not a symmetric idempotent within tolerance."""

    def __init__(self, defect: float):
        self.defect = defect
        super().__init__(f"not a projection: ||P^2 - P|| = {defect:.3e}")


class BadTotalMass(SbKitError, ValueError):
    """Weights of an invariant or profile do not sum to 1."""

    def __init__(self, total: Fraction):
        self.total = total
        super().__init__(f"total mass is {total}, expected 1")


class AtomMismatch(SbKitError, ValueError):
    """Two invariants have different atom lists (different completions)."""


class TowerDeficit(SbKitError):
    """No tower base reaches the requested coverage."""

    def __init__(self, best_coverage: Fraction, required: Fraction, block: Optional[int] = None):
        self.best_coverage = best_coverage
        self.required = required
        self.block = block
        where = f" in block {block}" if block is not None else ""
        super().__init__(
            f"tower coverage {best_coverage} below required {required}{where}"
        )


class ShapeMismatch(SbKitError, ValueError):
    """Two systems differ in atom count or block structure."""


class BadSchedule(SbKitError, ValueError):
    """A perturbation schedule is empty or its bounds do not strictly decrease."""


class NotAPreorder(SbKitError, ValueError):
    """Embeddability relation is not reflexive and transitive."""


class NotAPartialOrder(SbKitError, ValueError):
    """Embeddability relation is not antisymmetric."""


class CatalogMismatch(SbKitError, ValueError):
    """Two profiles refer to different catalogs."""


class ParseError(SbKitError, ValueError):
    """A job payload could not be parsed."""

    def __init__(self, path: str, reason: str):
        self.path, self.reason = path, reason
        super().__init__(f"parse error at '{path}': {reason}")


class ValidationError(SbKitError, ValueError):
    """A job payload parsed but violates a structure invariant."""

    def __init__(self, invariant: str, path: str = "", detail: str = ""):
        self.invariant, self.path, self.detail = invariant, path, detail
        location = f" at '{path}'" if path else ""
        suffix = f": {detail}" if detail else ""
        super().__init__(f"invariant '{invariant}' violated{location}{suffix}")
