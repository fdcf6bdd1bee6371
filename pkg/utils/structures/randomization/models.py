"""
Model catalogs and density profiles using Pydantic.

A catalog lists the isomorphism types of the countable models of a theory
with the embeddability relation between them. A separable model of the
randomization is represented by its density profile: how much measure it
puts on each model type.
"""
from fractions import Fraction
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict, model_validator
from pydantic_core import PydanticCustomError

from ..common import Rational


class ModelCatalog(BaseModel):
    """Identifiers with a boolean relation embeds[i][j] = "i embeds into j"."""

    ids: tuple[str, ...]
    embeds: tuple[tuple[bool, ...], ...]

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_shape(self) -> "ModelCatalog":
        if len(set(self.ids)) != len(self.ids):
            raise PydanticCustomError("distinct ids", "catalog ids must be distinct")
        size = len(self.ids)
        if len(self.embeds) != size or any(len(row) != size for row in self.embeds):
            raise PydanticCustomError(
                "relation shape", "embeds must be a {size}x{size} boolean matrix", {"size": size}
            )
        return self

    def index(self, model_id: str) -> int:
        return self.ids.index(model_id)

    def embeds_into(self, i: str, j: str) -> bool:
        return self.embeds[self.index(i)][self.index(j)]

    def pairs(self) -> list[tuple[str, str]]:
        """All (i, j) with i ≠ j and i embedding into j."""
        return [
            (i, j)
            for a, i in enumerate(self.ids)
            for b, j in enumerate(self.ids)
            if a != b and self.embeds[a][b]
        ]

    @classmethod
    def from_pairs(cls, ids, pairs) -> "ModelCatalog":
        """Catalog whose relation is the reflexive closure of the given pairs (not made transitive)."""
        ids = tuple(ids)
        related = set(pairs)
        embeds = tuple(tuple(i == j or (i, j) in related for j in ids) for i in ids)
        return cls(ids=ids, embeds=embeds)

    @classmethod
    def chain(cls, ids) -> "ModelCatalog":
        ids = tuple(ids)
        return cls(ids=ids, embeds=tuple(tuple(a <= b for b in range(len(ids))) for a in range(len(ids))))

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode='json')


class DensityProfile(BaseModel):
    """
    Density function rho on the ids of a catalog; Σ rho = 1 exactly.

    Ids missing from rho have density 0.
    """

    catalog: ModelCatalog
    rho: dict[str, Rational]

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_density(self) -> "DensityProfile":
        unknown = sorted(set(self.rho) - set(self.catalog.ids))
        if unknown:
            raise PydanticCustomError(
                "known ids", "rho mentions ids not in the catalog: {ids}", {"ids": ", ".join(unknown)}
            )
        if any(v < 0 for v in self.rho.values()):
            raise PydanticCustomError("nonnegative density", "densities must be nonnegative")
        total = sum(self.rho.values(), Fraction(0))
        if total != 1:
            raise PydanticCustomError("unit mass", "densities sum to {total}, expected 1", {"total": str(total)})
        return self

    def weight(self, model_id: str) -> Fraction:
        return self.rho.get(model_id, Fraction(0))

    def mass(self, ids) -> Fraction:
        return sum((self.weight(i) for i in ids), Fraction(0))

    def support(self) -> dict[str, Fraction]:
        return {i: w for i, w in self.rho.items() if w != 0}

    def same_density(self, other: "DensityProfile") -> bool:
        return self.support() == other.support()

    @classmethod
    def dirac(cls, catalog: ModelCatalog, model_id: str) -> "DensityProfile":
        return cls(catalog=catalog, rho={model_id: Fraction(1)})

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode='json')
