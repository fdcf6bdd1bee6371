"""
Embeddability and the SB decision between density profiles.

p embeds into q when p's mass can be transported onto q's along embeds
arcs. By Hall's condition this is the same as p(U) ≤ q(U) for every
up-closed set U; both checks are available and they are cross-checked in
the test-suite.
"""
from fractions import Fraction
from typing import ClassVar, Optional, Union

from pydantic import BaseModel, ConfigDict

from core.config import Config
from ..common import Rational, Verdict, get_logger, verdict_from_directions
from ..errors import CatalogMismatch, InternalContradiction
from ..flows import Infeasible, TransportPlan, transport_plan
from .catalogs import linear_extension, up_closed_sets, validate_catalog
from .models import DensityProfile

logger = get_logger(__name__)


def _check_catalog(p: DensityProfile, q: DensityProfile) -> None:
    if p.catalog != q.catalog:
        raise CatalogMismatch(f"profiles refer to different catalogs: {list(p.catalog.ids)} vs {list(q.catalog.ids)}")


def flow_embeddable(p: DensityProfile, q: DensityProfile) -> Union[TransportPlan, Infeasible]:
    """
    Transport p.rho onto q.rho along arcs i -> j with i embedding into j.

    Raises:
        CatalogMismatch: If the profiles use different catalogs
    """
    _check_catalog(p, q)
    return transport_plan(p.rho, q.rho, p.catalog.embeds_into)


def upset_dominance_embeddable(p: DensityProfile, q: DensityProfile) -> bool:
    """
    Whether p(U) ≤ q(U) for every up-closed set U.

    Catalogs larger than SBKIT_UPSET_ENUM_MAX are decided by the flow instead.

    Raises:
        CatalogMismatch: If the profiles use different catalogs
    """
    _check_catalog(p, q)
    if len(p.catalog.ids) > Config.upset_enum_max():
        logger.debug(f"{len(p.catalog.ids)} ids: deciding dominance by flow")
        return isinstance(flow_embeddable(p, q), TransportPlan)
    return all(p.mass(u) <= q.mass(u) for u in up_closed_sets(p.catalog))


def linear_extension_tails(
    p: DensityProfile, q: DensityProfile, order: list[str]
) -> list[tuple[int, Fraction, Fraction]]:
    """(k, p-mass, q-mass) of every suffix order[k:] of a linear extension."""
    return [(k, p.mass(order[k:]), q.mass(order[k:])) for k in range(len(order))]


class RandomizationDecision(BaseModel):
    """Verdict of sb_decide_randomization with its witnesses."""

    verdict: Verdict
    is_partial_order: bool
    witness: Optional[dict[str, Rational]] = None
    forward_plan: Optional[TransportPlan] = None
    backward_plan: Optional[TransportPlan] = None

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)


def _check_tails(p: DensityProfile, q: DensityProfile, order: list[str]) -> None:
    """Suffixes of a linear extension are up-closed, so dominance bounds every tail."""
    for k, mass_p, mass_q in linear_extension_tails(p, q, order):
        if mass_p > mass_q:
            raise InternalContradiction(
                f"dominant profile has tail {mass_p} > {mass_q} from position {k} of {order}"
            )


def _dominance_plan(p: DensityProfile, q: DensityProfile) -> TransportPlan:
    """The flow witness for an up-set dominance claim; the two oracles must agree."""
    plan = flow_embeddable(p, q)
    if isinstance(plan, Infeasible):
        raise InternalContradiction(
            f"up-set dominance holds but the flow is short by {plan.shortfall}"
        )
    return plan


def sb_decide_randomization(p: DensityProfile, q: DensityProfile) -> RandomizationDecision:
    """
    Decide isomorphism of bi-embeddable separable randomizations.

    On a partial-order catalog, bi-dominance must force equal densities; on a
    preorder that is not antisymmetric, unequal bi-dominant profiles are an
    SBFailureWitness.

    Raises:
        CatalogMismatch: If the profiles use different catalogs
        InternalContradiction: If bi-dominant profiles differ on a partial order,
            or if dominance and the flow oracle disagree
    """
    _check_catalog(p, q)
    report = validate_catalog(p.catalog)
    forward = upset_dominance_embeddable(p, q)
    backward = upset_dominance_embeddable(q, p)

    if report.is_partial_order:
        order = linear_extension(p.catalog)
        if forward:
            _check_tails(p, q, order)
        if backward:
            _check_tails(q, p, order)

    plans = dict(
        forward_plan=_dominance_plan(p, q) if forward else None,
        backward_plan=_dominance_plan(q, p) if backward else None,
    )

    verdict = verdict_from_directions(forward, backward)
    if verdict is Verdict.ISOMORPHIC and not p.same_density(q):
        if report.is_partial_order:
            raise InternalContradiction(f"bi-dominant profiles differ on a partial order: {p.rho} vs {q.rho}")
        logger.info(f"SB fails: bi-dominant profiles differ (mutual pairs {report.mutual_pairs})")
        return RandomizationDecision(
            verdict=Verdict.SB_FAILURE_WITNESS, is_partial_order=False, **plans
        )

    logger.info(f"randomization verdict: {verdict.value}")
    witness = p.support() if verdict is Verdict.ISOMORPHIC else None
    return RandomizationDecision(
        verdict=verdict, is_partial_order=report.is_partial_order, witness=witness, **plans
    )
