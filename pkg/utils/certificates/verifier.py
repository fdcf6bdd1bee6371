"""
Independent re-checking of certificates.

Nothing here repeats a search. Residuals are recomputed from the recorded
orthogonal map, plans are re-added, towers are re-walked and φ is rebuilt
from its towers and its distance re-measured.
"""
from fractions import Fraction
from typing import Callable

import numpy as np
import pydantic

from core.config import Config
from utils.structures.apra import (
    ConjugacyCertificate, check_tower, conjugate, phi_from_towers, uniform_distance,
)
from utils.structures.common import Verdict, format_rational, get_logger, parse_rational, verdict_from_directions
from utils.structures.errors import SbKitError
from utils.structures.flows import TransportPlan, check_plan
from utils.structures.maharam import MaharamInvariant, normalize, tail_dominance_embeddable, tail_profile
from utils.structures.randomization import inspect_catalog, upset_dominance_embeddable
from utils.structures.symspec import (
    OrthogonalMap, describe, description_embeddable, spectrally_equivalent, unitary_residual,
)
from .models import Certificate, Job, JobKind

logger = get_logger(__name__)

# Relative slack when comparing a recomputed residual to the recorded one
RESIDUAL_SLACK = 1e-12


def _expected_verdict_from_descriptions(d1, d2, tol: float) -> Verdict:
    verdict = verdict_from_directions(
        description_embeddable(d1, d2, tol), description_embeddable(d2, d1, tol)
    )
    if verdict is Verdict.ISOMORPHIC and spectrally_equivalent(d1, d2, tol):
        return Verdict.SPECTRALLY_EQUIVALENT
    return verdict


def _check_operators(cert: Certificate, job: Job) -> list[str]:
    tol = job.parameters.cluster_tol or Config.cluster_tol()
    expected = _expected_verdict_from_descriptions(describe(job.left, tol), describe(job.right, tol), tol)

    if cert.verdict is not Verdict.APPROXIMATELY_UNITARILY_EQUIVALENT:
        return [] if cert.verdict is expected else [f"verdict {cert.verdict.value}, recomputed {expected.value}"]
    if expected is not Verdict.SPECTRALLY_EQUIVALENT:
        return [f"operators are not spectrally equivalent ({expected.value})"]

    problems = []
    U = OrthogonalMap.model_validate(cert.witness["orthogonal_map"])
    if U.dim != job.left.dim:
        return [f"orthogonal map has dimension {U.dim}, expected {job.left.dim}"]
    claimed = float(cert.bound("residual"))
    epsilon = float(cert.bound("epsilon"))
    recomputed = unitary_residual(job.left, job.right, U)
    if recomputed > claimed * (1 + RESIDUAL_SLACK):
        problems.append(f"residual {recomputed!r} exceeds claimed {claimed!r}")
    if not claimed < epsilon:
        problems.append(f"claimed residual {claimed!r} is not below epsilon {epsilon!r}")
    if epsilon > float(job.epsilon):
        problems.append(f"certificate epsilon {epsilon!r} is larger than the job's {float(job.epsilon)!r}")
    return problems


def _check_descriptions(cert: Certificate, job: Job) -> list[str]:
    tol = job.parameters.cluster_tol or Config.cluster_tol()
    expected = _expected_verdict_from_descriptions(job.left, job.right, tol)
    return [] if cert.verdict is expected else [f"verdict {cert.verdict.value}, recomputed {expected.value}"]


def _check_plan_entry(cert: Certificate, name: str, sources, targets, allowed: Callable) -> list[str]:
    if name not in cert.witness:
        return [f"missing {name}"]
    plan = TransportPlan.model_validate(cert.witness[name])
    return [f"{name}: {problem}" for problem in check_plan(plan, sources, targets, allowed)]


def _check_algebras(cert: Certificate, job: Job) -> list[str]:
    left, right = normalize(job.left), normalize(job.right)
    problems = []

    claimed_tails = {claim: value for claim, value in cert.bounds}
    for side, inv in (("left", left), ("right", right)):
        for kappa, mass in tail_profile(inv):
            claim = f"tail[{side}][{kappa}]"
            if claimed_tails.pop(claim, None) != format_rational(mass):
                problems.append(f"{claim} does not match recomputed {mass}")
    problems.extend(f"unexpected claim {claim}" for claim in claimed_tails)

    forward = tail_dominance_embeddable(left, right)
    backward = tail_dominance_embeddable(right, left)
    expected = verdict_from_directions(forward, backward)
    if cert.verdict is not expected:
        problems.append(f"verdict {cert.verdict.value}, recomputed {expected.value}")

    if cert.verdict is Verdict.ISOMORPHIC:
        witness = normalize(MaharamInvariant.model_validate(cert.witness.get("invariant", {})))
        if not (witness == left == right):
            problems.append("equality witness differs from the inputs")
        return problems

    def blocks(inv):
        return {k.index: w for w, k in inv.blocks}

    def allowed(i, j):
        return i <= j

    if forward:
        problems.extend(_check_plan_entry(cert, "forward_plan", blocks(left), blocks(right), allowed))
    if backward:
        problems.extend(_check_plan_entry(cert, "backward_plan", blocks(right), blocks(left), allowed))
    return problems


def _check_automorphisms(cert: Certificate, job: Job) -> list[str]:
    T, S = job.left, job.right
    steps = job.schedule()
    conjugacies = cert.witness.get("conjugacies", [])
    if cert.verdict is not Verdict.APPROXIMATELY_ISOMORPHIC:
        return [f"verdict {cert.verdict.value}, expected {Verdict.APPROXIMATELY_ISOMORPHIC.value}"]
    if len(conjugacies) != len(steps):
        return [f"{len(conjugacies)} conjugacies for {len(steps)} schedule steps"]

    problems = []
    previous_bound = None
    for k, ((n, epsilon), payload) in enumerate(zip(steps, conjugacies)):
        conj = ConjugacyCertificate.model_validate(payload)
        bound = Fraction(1, n) + epsilon
        if conj.height != n or conj.epsilon != epsilon or conj.bound != bound:
            problems.append(f"step {k}: bound is not 1/{n} + {epsilon}")
        if previous_bound is not None and bound >= previous_bound:
            problems.append(f"step {k}: bounds do not strictly decrease")
        previous_bound = bound

        if len(conj.towers) != len(T.blocks):
            problems.append(f"step {k}: {len(conj.towers)} tower pairs for {len(T.blocks)} blocks")
            continue
        for i, (tower_t, tower_s) in enumerate(conj.towers, start=1):
            problems.extend(f"step {k} block {i - 1} (left): {p}" for p in check_tower(T, tower_t))
            problems.extend(f"step {k} block {i - 1} (right): {p}" for p in check_tower(S, tower_s))
            required = 1 - epsilon / 2 ** i
            if tower_t.height != n or min(tower_t.coverage, tower_s.coverage) < required:
                problems.append(f"step {k} block {i - 1}: tower does not reach coverage {required}")

        phi = phi_from_towers(T, S, conj.towers)
        if not np.array_equal(phi, np.asarray(conj.phi)):
            problems.append(f"step {k}: phi does not match its towers")
            continue
        measured = uniform_distance(conjugate(T, phi), S)
        if measured != conj.measured_distance:
            problems.append(f"step {k}: measured distance {measured}, claimed {conj.measured_distance}")
        if parse_rational(cert.bound(f"distance[{k}]")) != measured:
            problems.append(f"step {k}: distance claim does not match {measured}")
        if parse_rational(cert.bound(f"bound[{k}]")) != bound or measured > bound:
            problems.append(f"step {k}: bound claim does not hold")
    return problems


def _check_randomizations(cert: Certificate, job: Job) -> list[str]:
    p, q = job.left, job.right
    problems = []
    forward = upset_dominance_embeddable(p, q)
    backward = upset_dominance_embeddable(q, p)
    expected = verdict_from_directions(forward, backward)
    if expected is Verdict.ISOMORPHIC and not p.same_density(q):
        expected = Verdict.SB_FAILURE_WITNESS
        if inspect_catalog(p.catalog).antisymmetric:
            problems.append("bi-dominant unequal profiles on a partial order")
    if cert.verdict is not expected:
        problems.append(f"verdict {cert.verdict.value}, recomputed {expected.value}")

    if cert.verdict is Verdict.ISOMORPHIC:
        density = {k: parse_rational(v) for k, v in cert.witness.get("density", {}).items()}
        if density != p.support() or density != q.support():
            problems.append("density witness differs from the inputs")

    allowed = p.catalog.embeds_into
    if forward:
        problems.extend(_check_plan_entry(cert, "forward_plan", p.rho, q.rho, allowed))
    if backward:
        problems.extend(_check_plan_entry(cert, "backward_plan", q.rho, p.rho, allowed))
    for claim, value in cert.bounds:
        if parse_rational(value) != 1:
            problems.append(f"{claim} is {value}, expected 1")
    return problems


_CHECKS: dict[JobKind, Callable[[Certificate, Job], list[str]]] = {
    JobKind.OPERATORS: _check_operators,
    JobKind.DESCRIPTIONS: _check_descriptions,
    JobKind.ALGEBRAS: _check_algebras,
    JobKind.AUTOMORPHISMS: _check_automorphisms,
    JobKind.RANDOMIZATIONS: _check_randomizations,
}


def verify_certificate(cert: Certificate, job: Job) -> bool:
    """
    Re-check every claim of a certificate against its job.

    Returns:
        bool: True iff every recorded bound holds when recomputed
    """
    if cert.kind is not job.kind:
        logger.warning(f"certificate kind {cert.kind.value} does not match job kind {job.kind.value}")
        return False
    try:
        problems = _CHECKS[job.kind](cert, job)
    except (SbKitError, pydantic.ValidationError, KeyError, TypeError, ValueError) as e:
        logger.warning(f"certificate could not be checked: {e}")
        return False

    for problem in problems:
        logger.warning(f"certificate check failed: {problem}")
    return not problems
