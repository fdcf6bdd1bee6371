"""
Spectral data models using Pydantic.

This module defines the finite-dimensional stand-ins for a Hilbert space
expanded with a bounded self-adjoint operator: real symmetric matrices,
orthogonal maps, symbolic spectral descriptions and Riemann partitions of
the spectral range.
"""
import math
from typing import Any, ClassVar, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, field_validator, model_validator
from pydantic_core import PydanticCustomError

from ..common import Multiplicity

ORTHOGONALITY_TOL = 1e-10
VALUE_TOL = 1e-9


def _square_array(value: Any) -> np.ndarray:
    """Convert rows to a read-only float matrix, checking shape and finiteness."""
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise PydanticCustomError("matrix", "entries must be numeric rows: {reason}", {"reason": str(e)})
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise PydanticCustomError(
            "square", "entries must form a non-empty square matrix, got shape {shape}",
            {"shape": str(arr.shape)},
        )
    if not np.all(np.isfinite(arr)):
        raise PydanticCustomError("finite", "entries must be finite reals")
    arr.setflags(write=False)
    return arr


class SelfAdjointOperator(BaseModel):
    """
    A bounded self-adjoint operator on a finite-dimensional real Hilbert space.

    Symmetry is exact: entries[i][j] == entries[j][i] bit for bit. Results of
    floating-point products should go through `symmetrized`.
    """

    entries: np.ndarray

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode='before')
    @classmethod
    def accept_payload(cls, data: Any) -> Any:
        """Accept the wire form {"dim": n, "rows": [...]} as well as entries=..."""
        if isinstance(data, dict) and "rows" in data:
            rows = data["rows"]
            dim = data.get("dim")
            if dim is not None and (not isinstance(rows, list) or len(rows) != dim):
                raise PydanticCustomError(
                    "dimension", "dim {dim} does not match the number of rows", {"dim": dim}
                )
            return {"entries": rows}
        return data

    @field_validator('entries', mode='before')
    @classmethod
    def validate_entries(cls, v: Any) -> np.ndarray:
        arr = _square_array(v)
        if not np.array_equal(arr, arr.T):
            raise PydanticCustomError("symmetry", "operator matrix is not symmetric")
        return arr

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def symmetrized(cls, matrix: Any) -> "SelfAdjointOperator":
        """Build an operator from a numerically symmetric matrix, (M + Mᵀ)/2."""
        arr = np.array(matrix, dtype=float)
        return cls(entries=(arr + arr.T) / 2.0)

    @classmethod
    def diag(cls, *values: float) -> "SelfAdjointOperator":
        return cls(entries=np.diag(np.array(values, dtype=float)))

    @classmethod
    def identity(cls, dim: int) -> "SelfAdjointOperator":
        return cls(entries=np.eye(dim))

    @classmethod
    def zero(cls, dim: int) -> "SelfAdjointOperator":
        return cls(entries=np.zeros((dim, dim)))

    def to_payload(self) -> dict[str, Any]:
        return {"dim": self.dim, "rows": self.entries.tolist()}


class OrthogonalMap(BaseModel):
    """
    An isomorphism of finite-dimensional real Hilbert spaces.

    Orthogonality holds up to ‖UᵀU − I‖_op ≤ 1e-10.
    """

    entries: np.ndarray

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode='before')
    @classmethod
    def accept_payload(cls, data: Any) -> Any:
        if isinstance(data, dict) and "rows" in data:
            return {"entries": data["rows"]}
        return data

    @field_validator('entries', mode='before')
    @classmethod
    def validate_entries(cls, v: Any) -> np.ndarray:
        arr = _square_array(v)
        defect = float(np.linalg.norm(arr.T @ arr - np.eye(arr.shape[0]), 2))
        if defect > ORTHOGONALITY_TOL:
            raise PydanticCustomError(
                "orthogonality", "map is not orthogonal: defect {defect}", {"defect": f"{defect:.3e}"}
            )
        return arr

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def identity(cls, dim: int) -> "OrthogonalMap":
        return cls(entries=np.eye(dim))

    def conjugate(self, operator: SelfAdjointOperator) -> SelfAdjointOperator:
        """Return U·A·Uᵀ."""
        return SelfAdjointOperator.symmetrized(self.entries @ operator.entries @ self.entries.T)

    def to_payload(self) -> dict[str, Any]:
        return {"dim": self.dim, "rows": self.entries.tolist()}


class SpectralDescription(BaseModel):
    """
    Symbolic spectral invariant of a self-adjoint operator.

    `isolated` lists the isolated spectral points of finite multiplicity;
    `essential` lists the essential spectrum, each point with its eigenvalue
    multiplicity (0 when the point is not an eigenvalue, INFINITE allowed).
    Both lists are kept sorted by value.
    """

    isolated: tuple[tuple[float, PositiveInt], ...] = ()
    essential: tuple[tuple[float, Multiplicity], ...] = ()

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @field_validator('isolated', mode='before')
    @classmethod
    def reject_infinite_isolated(cls, v: Any) -> Any:
        for point in v or ():
            mult = point[1] if isinstance(point, (list, tuple)) and len(point) == 2 else None
            if isinstance(mult, str) or (isinstance(mult, float) and math.isinf(mult)):
                raise PydanticCustomError(
                    "finite isolated multiplicity",
                    "infinite multiplicities belong in the essential list",
                )
        return v

    @field_validator('isolated')
    @classmethod
    def finite_isolated(cls, v: tuple) -> tuple:
        for value, mult in v:
            if not math.isfinite(value):
                raise PydanticCustomError("finite", "spectral values must be finite")
        return tuple(sorted(v))

    @field_validator('essential')
    @classmethod
    def sort_essential(cls, v: tuple) -> tuple:
        for value, _ in v:
            if not math.isfinite(value):
                raise PydanticCustomError("finite", "spectral values must be finite")
        return tuple(sorted(v))

    @model_validator(mode='after')
    def distinct_values(self) -> "SpectralDescription":
        values = sorted([v for v, _ in self.isolated] + [v for v, _ in self.essential])
        for a, b in zip(values, values[1:]):
            if b - a <= VALUE_TOL:
                raise PydanticCustomError(
                    "distinct spectral values",
                    "spectral value {value} listed twice (isolated values must be distinct "
                    "and disjoint from essential values)",
                    {"value": a},
                )
        return self

    def spectrum(self) -> list[float]:
        """σ: every spectral value, sorted."""
        return sorted([v for v, _ in self.isolated] + [v for v, _ in self.essential])

    def essential_values(self) -> list[float]:
        """σ_e, sorted."""
        return [v for v, _ in self.essential]

    def eigen_multiplicity(self, value: float, tol: float = VALUE_TOL) -> float:
        """dim Ker(A − λI); 0 when λ is not an eigenvalue."""
        for v, m in self.isolated:
            if abs(v - value) <= tol:
                return m
        for v, m in self.essential:
            if abs(v - value) <= tol:
                return m
        return 0

    def eigenvalues(self) -> list[tuple[float, float]]:
        """Every (value, multiplicity) with positive multiplicity."""
        points = list(self.isolated) + [(v, m) for v, m in self.essential if m > 0]
        return sorted(points)

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode='json')


class RiemannPartition(BaseModel):
    """
    A tagged partition of [left, right) into consecutive half-open cells.

    Cells share their boundary floats exactly, so consecutive coverage is an
    equality check rather than a tolerance check.
    """

    left: float
    right: float
    cells: tuple[tuple[float, float], ...]
    tags: tuple[float, ...]

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_cover(self) -> "RiemannPartition":
        if not self.cells:
            raise PydanticCustomError("partition", "partition needs at least one cell")
        if len(self.tags) != len(self.cells):
            raise PydanticCustomError("partition", "one tag per cell is required")
        if self.cells[0][0] != self.left or self.cells[-1][1] != self.right:
            raise PydanticCustomError("partition", "cells must start at left and end at right")
        for (lo, hi), (next_lo, _) in zip(self.cells, self.cells[1:]):
            if hi != next_lo:
                raise PydanticCustomError("partition", "cells must be consecutive")
        for (lo, hi), tag in zip(self.cells, self.tags):
            if not lo < hi:
                raise PydanticCustomError("partition", "cells must have positive length")
            if not lo <= tag < hi:
                raise PydanticCustomError("partition", "tag {tag} outside its cell", {"tag": tag})
        return self

    @property
    def mesh(self) -> float:
        return max(hi - lo for lo, hi in self.cells)

    @classmethod
    def uniform(
        cls,
        left: float,
        right: float,
        n_cells: int,
        tags: Literal["midpoint", "left"] = "midpoint",
    ) -> "RiemannPartition":
        """Equal-width cells over [left, right) tagged at midpoints or left ends."""
        if n_cells < 1 or not left < right:
            raise ValueError(f"cannot partition [{left}, {right}) into {n_cells} cells")
        width = (right - left) / n_cells
        bounds = [left + k * width for k in range(n_cells)] + [right]
        cells = tuple(zip(bounds[:-1], bounds[1:]))
        if tags == "midpoint":
            tag_values = tuple(lo + (hi - lo) / 2 for lo, hi in cells)
        else:
            tag_values = tuple(lo for lo, _ in cells)
        return cls(left=left, right=right, cells=cells, tags=tag_values)

    @classmethod
    def from_bounds(
        cls, bounds: list[float], tags: Optional[list[float]] = None
    ) -> "RiemannPartition":
        """Cells between consecutive bounds; tags default to cell midpoints."""
        cells = tuple(zip(bounds[:-1], bounds[1:]))
        if tags is None:
            tags = [lo + (hi - lo) / 2 for lo, hi in cells]
        return cls(left=bounds[0], right=bounds[-1], cells=cells, tags=tuple(tags))


class UniformGrid(BaseModel):
    """
    The cells of RiemannPartition.uniform(left, right, n_cells), addressed by
    index instead of materialized.

    Cell k is [left + k·width, left + (k+1)·width), the last one ending at
    right exactly, so membership agrees bit for bit with the partition.
    """

    left: float
    right: float
    n_cells: PositiveInt

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_range(self) -> "UniformGrid":
        if not self.left < self.right:
            raise PydanticCustomError("partition", "grid needs left < right")
        return self

    @property
    def width(self) -> float:
        return (self.right - self.left) / self.n_cells

    def _bounds(self, k: np.ndarray) -> np.ndarray:
        return np.where(k >= self.n_cells, self.right, self.left + k * self.width)

    def boundary(self, k: int) -> float:
        return float(self._bounds(np.asarray(k)))

    def cell(self, k: int) -> tuple[float, float]:
        return self.boundary(k), self.boundary(k + 1)

    def index(self, values: np.ndarray) -> np.ndarray:
        """Cell index of each value; values must lie in [left, right)."""
        values = np.asarray(values, dtype=float)
        k = np.clip(np.floor((values - self.left) / self.width).astype(int), 0, self.n_cells - 1)
        # floor may land one cell off next to a boundary
        k = np.where(values < self._bounds(k), k - 1, k)
        k = np.where(values >= self._bounds(k + 1), k + 1, k)
        return np.clip(k, 0, self.n_cells - 1)

    def interior_clearance(self, values: np.ndarray) -> float:
        """Smallest distance from a value to an interior boundary (inf with one cell)."""
        if self.n_cells == 1:
            return math.inf
        values = np.asarray(values, dtype=float)
        nearest = np.clip(np.rint((values - self.left) / self.width).astype(int), 1, self.n_cells - 1)
        return float(np.min(np.abs(values - self._bounds(nearest))))

    def to_partition(self, tags: Literal["midpoint", "left"] = "midpoint") -> RiemannPartition:
        """Materialize every cell; linear in n_cells."""
        return RiemannPartition.uniform(self.left, self.right, self.n_cells, tags)
