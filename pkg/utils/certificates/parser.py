"""
Parse job files into validated Job models.

Malformed text or payloads of the wrong shape give a ParseError naming the
offending path; payloads that parse but break a structure invariant give a
ValidationError naming the invariant.
"""
import json
from pathlib import Path
from typing import Any, Union

import pydantic

from utils.structures.common import get_logger
from utils.structures.errors import BadTotalMass, NotAPreorder, ParseError, ValidationError
from utils.structures.maharam import normalize
from utils.structures.randomization import validate_catalog
from .models import STRUCTURE_TYPES, Job, JobKind, JobParameters

logger = get_logger(__name__)

# Error types raised by structure validators; anything else is a parse problem
INVARIANT_ERRORS = frozenset({
    "matrix", "square", "finite", "dimension", "symmetry", "orthogonality",
    "finite isolated multiplicity", "distinct spectral values", "partition",
    "positive weight", "block sizes", "permutation", "block invariance",
    "bijection", "distance bound", "distinct ids", "relation shape", "known ids",
    "nonnegative density", "unit mass", "parameters", "structure kind",
})


def _path(prefix: str, loc: tuple) -> str:
    parts = [prefix] + [str(part) for part in loc]
    return ".".join(part for part in parts if part)


def _translate(error: pydantic.ValidationError, prefix: str) -> Union[ParseError, ValidationError]:
    """Map the first pydantic error onto the sb-kit error it stands for."""
    first = error.errors()[0]
    path = _path(prefix, first.get("loc", ()))
    if first["type"] in INVARIANT_ERRORS:
        return ValidationError(first["type"], path=path, detail=first["msg"])
    return ParseError(path or "$", first["msg"])


def _structure(kind: JobKind, payload: Any, path: str):
    if not isinstance(payload, dict):
        raise ParseError(path, "structure payload must be an object")
    try:
        structure = STRUCTURE_TYPES[kind].model_validate(payload)
    except pydantic.ValidationError as e:
        raise _translate(e, path) from e

    if kind is JobKind.ALGEBRAS:
        try:
            structure = normalize(structure)
        except BadTotalMass as e:
            raise ValidationError("unit mass", path=path, detail=str(e)) from e
    if kind is JobKind.RANDOMIZATIONS:
        try:
            validate_catalog(structure.catalog)
        except NotAPreorder as e:
            raise ValidationError("preorder", path=f"{path}.catalog", detail=str(e)) from e
    return structure


def parse_job_payload(data: Any) -> Job:
    """
    Build a Job from already-decoded JSON data.

    Randomization jobs may give the catalog once at the top level; it is
    shared by both profiles unless a profile carries its own.

    Raises:
        ParseError: If the payload is malformed
        ValidationError: If a structure or parameter invariant fails
    """
    if not isinstance(data, dict):
        raise ParseError("$", "job must be an object")

    try:
        kind = JobKind(data.get("kind"))
    except ValueError:
        choices = ", ".join(k.value for k in JobKind)
        raise ParseError("kind", f"expected one of {choices}, got {data.get('kind')!r}")

    sides = {}
    for side in ("left", "right"):
        if side not in data:
            raise ParseError(side, "missing structure payload")
        payload = data[side]
        if kind is JobKind.RANDOMIZATIONS and isinstance(payload, dict) and "catalog" not in payload:
            if "catalog" not in data:
                raise ParseError(f"{side}.catalog", "profile needs a catalog")
            payload = {**payload, "catalog": data["catalog"]}
        sides[side] = _structure(kind, payload, side)

    try:
        parameters = JobParameters.model_validate(data.get("parameters") or {})
    except pydantic.ValidationError as e:
        raise _translate(e, "parameters") from e

    try:
        job = Job(kind=kind, left=sides["left"], right=sides["right"], parameters=parameters)
    except pydantic.ValidationError as e:
        raise _translate(e, "") from e

    logger.debug(f"parsed {kind.value} job")
    return job


def parse_job(text: str) -> Job:
    """
    Parse the JSON text of a job file.

    Raises:
        ParseError: If the text is not valid JSON or the payload is malformed
        ValidationError: If a structure or parameter invariant fails
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}", e.msg) from e
    return parse_job_payload(data)


def read_json(path: Path, label: str) -> Any:
    """Load a JSON file, reporting failures as ParseError against `label`."""
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise ParseError(label, f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ParseError(label, f"{path}: {e.msg} (line {e.lineno})") from e


def load_job(path: Path) -> Job:
    """Read and parse a job file."""
    return parse_job_payload(read_json(path, str(path)))
