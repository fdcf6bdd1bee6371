"""
Utility functions shared by the structure-analysis packages.

This module provides the configured logger factory, exact rational
parsing/formatting used by every JSON payload, and the INFINITE
multiplicity token.
"""
import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Union

from pydantic import BeforeValidator, PlainSerializer

from core.config import Config

# Infinite multiplicities are only ever compared, never added
INFINITE: float = math.inf


def get_logger(name: str) -> logging.Logger:
    """
    Get a configured logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        logging.Logger: Configured logger
    """
    logger = logging.getLogger(name)

    # Only add handlers if they don't exist
    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(Config.log_level())
        logger.propagate = False

    return logger


def parse_rational(value: Any) -> Fraction:
    """
    Parse a rational from a Fraction, an int or a "p/q" string.

    Floats are rejected: every rational in a payload must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{value}' is not a rational of the form p/q") from e
    raise ValueError(f"expected a rational 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Format a Fraction as "p/q"; integers are written without a denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


def parse_multiplicity(value: Any) -> Union[int, float]:
    """Parse a multiplicity: a natural number or the token "inf"."""
    if isinstance(value, str) and value.strip().lower() in {"inf", "infinite"}:
        return INFINITE
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return INFINITE
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"multiplicity must be a natural number or 'inf', got {value!r}")
    if value < 0:
        raise ValueError(f"multiplicity must be non-negative, got {value}")
    return value


def format_multiplicity(value: Union[int, float]) -> Union[int, str]:
    """Serialize a multiplicity, mapping INFINITE to "inf"."""
    if value == INFINITE:
        return "inf"
    return int(value)


Multiplicity = Annotated[
    Union[int, float],
    BeforeValidator(parse_multiplicity),
    PlainSerializer(format_multiplicity),
]


class Verdict(str, Enum):
    """Outcome of an SB decision; values are the names used on the wire."""

    ISOMORPHIC = "Isomorphic"
    EMBEDS_ONLY_FORWARD = "EmbedsOnlyForward"
    EMBEDS_ONLY_BACKWARD = "EmbedsOnlyBackward"
    INCOMPARABLE = "Incomparable"
    SB_FAILURE_WITNESS = "SBFailureWitness"
    SPECTRALLY_EQUIVALENT = "SpectrallyEquivalent"
    APPROXIMATELY_UNITARILY_EQUIVALENT = "ApproximatelyUnitarilyEquivalent"
    APPROXIMATELY_ISOMORPHIC = "ApproximatelyIsomorphic"

    @property
    def is_positive(self) -> bool:
        return self in _POSITIVE_VERDICTS


_POSITIVE_VERDICTS = {
    Verdict.ISOMORPHIC,
    Verdict.SPECTRALLY_EQUIVALENT,
    Verdict.APPROXIMATELY_UNITARILY_EQUIVALENT,
    Verdict.APPROXIMATELY_ISOMORPHIC,
}


def verdict_from_directions(forward: bool, backward: bool) -> Verdict:
    """Verdict for one-sided embeddability results (both directions handled by callers)."""
    if forward and backward:
        return Verdict.ISOMORPHIC
    if forward:
        return Verdict.EMBEDS_ONLY_FORWARD
    if backward:
        return Verdict.EMBEDS_ONLY_BACKWARD
    return Verdict.INCOMPARABLE


def as_rational(value: Any) -> Fraction:
    """
    Coerce a user-facing tolerance to a Fraction.

    Unlike parse_rational this accepts floats, read through their shortest
    decimal representation (0.34 becomes 17/50).
    """
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"expected a finite number, got {value!r}")
        return Fraction(repr(value))
    return parse_rational(value)


Tolerance = Annotated[
    Fraction,
    BeforeValidator(as_rational),
    PlainSerializer(format_rational, return_type=str),
]
