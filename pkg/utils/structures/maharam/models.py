"""
Maharam invariant models using Pydantic.

A model of the theory of probability algebras is classified by the
decreasing list of its atom measures together with the weighted list of the
homogeneous pieces of its atomless part, each tagged by the density
character ℵ_k of the piece.
"""
from functools import total_ordering
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_serializer, model_validator
from pydantic_core import PydanticCustomError

from ..common import Rational


@total_ordering
class CardinalCode(BaseModel):
    """ℵ_index; only the order of the codes matters."""

    index: NonNegativeInt

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='before')
    @classmethod
    def accept_index(cls, data: Any) -> Any:
        if isinstance(data, int) and not isinstance(data, bool):
            return {"index": data}
        return data

    @model_serializer
    def serialize(self) -> int:
        return self.index

    def __lt__(self, other: "CardinalCode") -> bool:
        return self.index < other.index

    def __str__(self) -> str:
        return f"aleph_{self.index}"


class MaharamInvariant(BaseModel):
    """
    Atoms t_1 ≥ t_2 ≥ … plus homogeneous blocks (α_i, ℵ_{κ_i}).

    The constructor only requires positive weights; `normalize` sorts, merges
    equal kappas and checks that the total mass is exactly 1.
    """

    atoms: tuple[Rational, ...] = ()
    blocks: tuple[tuple[Rational, CardinalCode], ...] = ()

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def positive_weights(self) -> "MaharamInvariant":
        if any(t <= 0 for t in self.atoms) or any(w <= 0 for w, _ in self.blocks):
            raise PydanticCustomError("positive weight", "atom and block weights must be positive")
        return self

    @property
    def total_mass(self):
        return sum(self.atoms, start=0) + sum((w for w, _ in self.blocks), start=0)

    @property
    def atomless_mass(self):
        return sum((w for w, _ in self.blocks), start=0)

    def kappas(self) -> list[CardinalCode]:
        return [k for _, k in self.blocks]

    def is_normalized(self) -> bool:
        kappas = self.kappas()
        return (
            list(self.atoms) == sorted(self.atoms, reverse=True)
            and kappas == sorted(set(kappas), reverse=True)
            and self.total_mass == 1
        )

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode='json')
