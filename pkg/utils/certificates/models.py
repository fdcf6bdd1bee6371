"""
Job and certificate models for the sb-kit front end.

A job names the kind of structures being compared, carries the two structure
payloads and the kind-specific parameters. A certificate records the verdict
together with the full witness and every numeric claim, so that it can be
re-checked without repeating the search.
"""
from enum import Enum
from fractions import Fraction
from typing import Any, ClassVar, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator
from pydantic_core import PydanticCustomError

from utils.structures.apra import BlockedPermutationSystem
from utils.structures.common import Tolerance, Verdict
from utils.structures.maharam import MaharamInvariant
from utils.structures.randomization import DensityProfile
from utils.structures.symspec import SelfAdjointOperator, SpectralDescription

CERTIFICATE_VERSION = "v1"

# Defaults for optional job parameters
DEFAULT_OPERATOR_EPSILON = Fraction(1, 10**6)
DEFAULT_TOWER_EPSILON = Fraction(0)


class JobKind(str, Enum):
    OPERATORS = "operators"
    DESCRIPTIONS = "descriptions"
    ALGEBRAS = "algebras"
    AUTOMORPHISMS = "automorphisms"
    RANDOMIZATIONS = "randomizations"


STRUCTURE_TYPES: dict[JobKind, type[BaseModel]] = {
    JobKind.OPERATORS: SelfAdjointOperator,
    JobKind.DESCRIPTIONS: SpectralDescription,
    JobKind.ALGEBRAS: MaharamInvariant,
    JobKind.AUTOMORPHISMS: BlockedPermutationSystem,
    JobKind.RANDOMIZATIONS: DensityProfile,
}

Structure = Union[
    SelfAdjointOperator, SpectralDescription, MaharamInvariant, BlockedPermutationSystem, DensityProfile
]


class JobParameters(BaseModel):
    """Kind-specific parameters; unused ones stay None."""

    epsilon: Optional[Tolerance] = None
    tower_height: Optional[PositiveInt] = None
    cluster_tol: Optional[float] = Field(default=None, gt=0)
    schedule: Optional[tuple[tuple[PositiveInt, Tolerance], ...]] = None

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra='forbid')


class Job(BaseModel):
    """Two structures of one kind and the parameters of their comparison."""

    kind: JobKind
    left: Structure
    right: Structure
    parameters: JobParameters = Field(default_factory=JobParameters)

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_kind(self) -> "Job":
        expected = STRUCTURE_TYPES[self.kind]
        for side in ("left", "right"):
            if not isinstance(getattr(self, side), expected):
                raise PydanticCustomError(
                    "structure kind", "{side} is not a {kind} structure",
                    {"side": side, "kind": self.kind.value},
                )

        params = self.parameters
        if params.epsilon is not None and params.epsilon < 0:
            raise PydanticCustomError("parameters", "epsilon must be non-negative")
        if self.kind is JobKind.OPERATORS and params.epsilon == 0:
            raise PydanticCustomError("parameters", "operators jobs need a positive epsilon")
        if self.kind is JobKind.AUTOMORPHISMS:
            if params.tower_height is None and not params.schedule:
                raise PydanticCustomError("parameters", "automorphisms jobs need a tower height or a schedule")
        return self

    @property
    def epsilon(self) -> Fraction:
        if self.parameters.epsilon is not None:
            return self.parameters.epsilon
        if self.kind is JobKind.OPERATORS:
            return DEFAULT_OPERATOR_EPSILON
        return DEFAULT_TOWER_EPSILON

    def schedule(self) -> list[tuple[int, Fraction]]:
        """The (n, ε) steps of an automorphisms job; a single step without a schedule."""
        if self.parameters.schedule:
            return [(n, eps) for n, eps in self.parameters.schedule]
        return [(self.parameters.tower_height, self.epsilon)]

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "left": self.left.to_payload(),
            "right": self.right.to_payload(),
            "parameters": self.parameters.model_dump(mode='json', exclude_none=True),
        }


class Certificate(BaseModel):
    """
    Self-describing result of a job.

    `bounds` lists (claim, value) pairs; values are "p/q" strings for exact
    quantities and decimal literals for reals.
    """

    kind: JobKind
    version: Literal["v1"] = CERTIFICATE_VERSION
    verdict: Verdict
    witness: dict[str, Any] = Field(default_factory=dict)
    bounds: list[tuple[str, str]] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict.is_positive else 1

    def bound(self, claim: str) -> Optional[str]:
        for name, value in self.bounds:
            if name == claim:
                return value
        return None
