"""
Dispatch a job to its analysis module and assemble the certificate.

Every certificate is passed through verify_certificate before it is
returned, so a certificate that leaves `run` has had all of its claims
re-checked independently of the search that produced it.
"""
from fractions import Fraction
from typing import Callable

from core.config import Config
from utils.structures.apra import perturbation_sequence
from utils.structures.common import Verdict, format_rational, get_logger, verdict_from_directions
from utils.structures.errors import InternalContradiction
from utils.structures.maharam import normalize, sb_decide, tail_profile
from utils.structures.randomization import sb_decide_randomization
from utils.structures.symspec import (
    approximate_unitary, describe, description_embeddable, occupied_cells,
    spectrally_equivalent, unitary_residual,
)
from .models import Certificate, Job, JobKind
from .verifier import verify_certificate

logger = get_logger(__name__)


def _descriptions_verdict(d1, d2, tol: float) -> Verdict:
    verdict = verdict_from_directions(
        description_embeddable(d1, d2, tol), description_embeddable(d2, d1, tol)
    )
    if verdict is Verdict.ISOMORPHIC:
        if not spectrally_equivalent(d1, d2, tol):
            raise InternalContradiction("bi-embeddable descriptions are not spectrally equivalent")
        return Verdict.SPECTRALLY_EQUIVALENT
    return verdict


def _run_operators(job: Job) -> Certificate:
    tol = job.parameters.cluster_tol or Config.cluster_tol()
    epsilon = float(job.epsilon)
    d1, d2 = describe(job.left, tol), describe(job.right, tol)
    details = {"left_description": d1.to_payload(), "right_description": d2.to_payload()}

    verdict = _descriptions_verdict(d1, d2, tol)
    if verdict is not Verdict.SPECTRALLY_EQUIVALENT:
        return Certificate(kind=job.kind, verdict=verdict, details=details)

    U = approximate_unitary(job.left, job.right, epsilon, tol)
    cells = occupied_cells(job.left, job.right, epsilon, tol)
    residual = unitary_residual(job.left, job.right, U)
    return Certificate(
        kind=job.kind,
        verdict=Verdict.APPROXIMATELY_UNITARILY_EQUIVALENT,
        witness={"orthogonal_map": U.to_payload(), "cells": [list(cell) for cell in cells]},
        bounds=[("residual", repr(residual)), ("epsilon", repr(epsilon))],
        details=details,
    )


def _run_descriptions(job: Job) -> Certificate:
    tol = job.parameters.cluster_tol or Config.cluster_tol()
    verdict = _descriptions_verdict(job.left, job.right, tol)
    return Certificate(
        kind=job.kind,
        verdict=verdict,
        witness={"left": job.left.to_payload(), "right": job.right.to_payload()},
    )


def _tail_bounds(left, right) -> list[tuple[str, str]]:
    bounds = []
    for side, inv in (("left", left), ("right", right)):
        bounds.extend((f"tail[{side}][{kappa}]", format_rational(mass)) for kappa, mass in tail_profile(inv))
    return bounds


def _run_algebras(job: Job) -> Certificate:
    left, right = normalize(job.left), normalize(job.right)
    decision = sb_decide(left, right)
    witness = {}
    if decision.witness is not None:
        witness["invariant"] = decision.witness.to_payload()
    if decision.forward_plan is not None:
        witness["forward_plan"] = decision.forward_plan.model_dump(mode='json')
    if decision.backward_plan is not None:
        witness["backward_plan"] = decision.backward_plan.model_dump(mode='json')
    details = {}
    if decision.discrepancy is not None:
        index, case = decision.discrepancy
        details["first_discrepancy"] = {"index": index, "case": case}
    return Certificate(
        kind=job.kind, verdict=decision.verdict, witness=witness,
        bounds=_tail_bounds(left, right), details=details,
    )


def _run_automorphisms(job: Job) -> Certificate:
    certificates = perturbation_sequence(job.left, job.right, job.schedule())
    bounds = []
    for k, cert in enumerate(certificates):
        bounds.append((f"distance[{k}]", format_rational(cert.measured_distance)))
        bounds.append((f"bound[{k}]", format_rational(cert.bound)))
    return Certificate(
        kind=job.kind,
        verdict=Verdict.APPROXIMATELY_ISOMORPHIC,
        witness={"conjugacies": [cert.model_dump(mode='json') for cert in certificates]},
        bounds=bounds,
    )


def _run_randomizations(job: Job) -> Certificate:
    decision = sb_decide_randomization(job.left, job.right)
    witness = {}
    bounds = []
    if decision.witness is not None:
        witness["density"] = {k: format_rational(v) for k, v in decision.witness.items()}
    for name in ("forward_plan", "backward_plan"):
        plan = getattr(decision, name)
        if plan is not None:
            witness[name] = plan.model_dump(mode='json')
            total = sum((e.amount for e in plan.entries), Fraction(0))
            bounds.append((f"{name}_mass", format_rational(total)))
    return Certificate(
        kind=job.kind, verdict=decision.verdict, witness=witness, bounds=bounds,
        details={"is_partial_order": decision.is_partial_order},
    )


_DISPATCH: dict[JobKind, Callable[[Job], Certificate]] = {
    JobKind.OPERATORS: _run_operators,
    JobKind.DESCRIPTIONS: _run_descriptions,
    JobKind.ALGEBRAS: _run_algebras,
    JobKind.AUTOMORPHISMS: _run_automorphisms,
    JobKind.RANDOMIZATIONS: _run_randomizations,
}


def run(job: Job) -> Certificate:
    """
    Run a job and return its verified certificate.

    Raises:
        SbKitError: Any module error (TowerDeficit, CellRankMismatch, ...)
        InternalContradiction: If the certificate fails its own verification
    """
    logger.info(f"running {job.kind.value} job")
    certificate = _DISPATCH[job.kind](job)
    if not verify_certificate(certificate, job):
        raise InternalContradiction(f"{job.kind.value} certificate failed verification")
    logger.info(f"verdict {certificate.verdict.value} (exit code {certificate.exit_code})")
    return certificate
