"""
Isomorphism, embeddability and the SB decision for models of Pr.

Embeddability is decided by tail dominance: for every cardinal κ, the mass
the source puts on pieces of density character ≥ κ must fit into the mass
the target puts there. A max-flow transport plan gives an independent
certificate of the same condition.
"""
from fractions import Fraction
from typing import ClassVar, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict

from ..common import Verdict, get_logger, verdict_from_directions
from ..errors import AtomMismatch, BadTotalMass, InternalContradiction
from ..flows import Infeasible, TransportPlan, transport_plan
from .models import CardinalCode, MaharamInvariant

logger = get_logger(__name__)


def normalize(inv: MaharamInvariant) -> MaharamInvariant:
    """
    Canonical form: atoms weakly decreasing, blocks by descending kappa with
    equal kappas merged.

    Raises:
        BadTotalMass: If the weights do not sum to exactly 1
    """
    if inv.total_mass != 1:
        raise BadTotalMass(Fraction(inv.total_mass))

    merged: dict[CardinalCode, Fraction] = {}
    for weight, kappa in inv.blocks:
        merged[kappa] = merged.get(kappa, Fraction(0)) + weight

    return MaharamInvariant(
        atoms=tuple(sorted(inv.atoms, reverse=True)),
        blocks=tuple((merged[k], k) for k in sorted(merged, reverse=True)),
    )


def is_isomorphic(a: MaharamInvariant, b: MaharamInvariant) -> bool:
    """Equal atom lists and equal block lists (both normalized)."""
    return a.atoms == b.atoms and a.blocks == b.blocks


def tail_profile(inv: MaharamInvariant) -> list[tuple[CardinalCode, Fraction]]:
    """Σ{α_i : κ_i ≥ κ} for every κ present, by ascending κ."""
    return [(kappa, _tail(inv, kappa)) for kappa in sorted(set(inv.kappas()))]


def _tail(inv: MaharamInvariant, kappa: CardinalCode) -> Fraction:
    return sum((w for w, k in inv.blocks if k >= kappa), start=Fraction(0))


def tail_dominance_embeddable(a: MaharamInvariant, b: MaharamInvariant) -> bool:
    """
    Whether a embeds into b.

    The atoms must agree exactly, and for every κ the tail of a at κ must be
    at most the tail of b at κ: pieces of density character κ only embed
    into pieces of density character ≥ κ.
    """
    if a.atoms != b.atoms:
        return False
    kappas = set(a.kappas()) | set(b.kappas())
    return all(_tail(a, k) <= _tail(b, k) for k in kappas)


def flow_embeddable(a: MaharamInvariant, b: MaharamInvariant) -> Union[TransportPlan, Infeasible]:
    """
    Transport the blocks of a onto the blocks of b along arcs κ ≤ λ.

    Labels in the plan are aleph indices.

    Raises:
        AtomMismatch: If the atom lists differ
    """
    if a.atoms != b.atoms:
        raise AtomMismatch(f"atom lists differ: {list(map(str, a.atoms))} vs {list(map(str, b.atoms))}")
    sources = {k.index: w for w, k in a.blocks}
    targets = {k.index: w for w, k in b.blocks}
    return transport_plan(sources, targets, lambda i, j: i <= j)


def first_discrepancy(
    a: MaharamInvariant, b: MaharamInvariant
) -> Optional[tuple[int, Literal["atom", "kappa", "weight"]]]:
    """
    The first position where the invariants differ, blocks read by ascending
    kappa; None when they are equal.
    """
    for i, (s, t) in enumerate(zip(a.atoms, b.atoms)):
        if s != t:
            return i, "atom"
    if len(a.atoms) != len(b.atoms):
        return min(len(a.atoms), len(b.atoms)), "atom"

    blocks_a = sorted(a.blocks, key=lambda block: block[1])
    blocks_b = sorted(b.blocks, key=lambda block: block[1])
    for i, ((alpha, kappa), (beta, lam)) in enumerate(zip(blocks_a, blocks_b)):
        if kappa != lam:
            return i, "kappa"
        if alpha != beta:
            return i, "weight"
    if len(blocks_a) != len(blocks_b):
        return min(len(blocks_a), len(blocks_b)), "kappa"
    return None


class MaharamDecision(BaseModel):
    """Verdict of sb_decide with its witnesses."""

    verdict: Verdict
    witness: Optional[MaharamInvariant] = None
    forward_plan: Optional[TransportPlan] = None
    backward_plan: Optional[TransportPlan] = None
    discrepancy: Optional[tuple[int, str]] = None

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)


def _dominance_plan(a: MaharamInvariant, b: MaharamInvariant) -> TransportPlan:
    """The flow witness for a tail-dominance claim; the two oracles must agree."""
    plan = flow_embeddable(a, b)
    if isinstance(plan, Infeasible):
        raise InternalContradiction(
            f"tail dominance holds but the flow is short by {plan.shortfall}"
        )
    return plan


def sb_decide(a: MaharamInvariant, b: MaharamInvariant) -> MaharamDecision:
    """
    Decide isomorphism of bi-embeddable models of Pr.

    Isomorphic is returned exactly when tail dominance holds both ways; the
    SB theorem says the invariants are then equal, which is re-checked here.

    Raises:
        InternalContradiction: If bi-dominant invariants differ, or if
            dominance and the flow oracle disagree
    """
    forward = tail_dominance_embeddable(a, b)
    backward = tail_dominance_embeddable(b, a)
    verdict = verdict_from_directions(forward, backward)

    if verdict is Verdict.ISOMORPHIC:
        if not is_isomorphic(a, b):
            raise InternalContradiction(
                f"bi-dominant invariants differ at {first_discrepancy(a, b)}"
            )
        logger.info("invariants are bi-embeddable and equal")
        return MaharamDecision(verdict=verdict, witness=a)

    decision = MaharamDecision(
        verdict=verdict,
        forward_plan=_dominance_plan(a, b) if forward else None,
        backward_plan=_dominance_plan(b, a) if backward else None,
        discrepancy=first_discrepancy(a, b),
    )
    logger.info(f"maharam verdict: {verdict.value}")
    return decision
