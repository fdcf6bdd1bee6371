#!/usr/bin/env python3
"""
Tests for Maharam invariants and the SB decision for probability algebras.
"""
from fractions import Fraction

import pydantic
import pytest

from utils.structures.common import Verdict
from utils.structures.errors import AtomMismatch, BadTotalMass, InternalContradiction
from utils.structures.flows import Infeasible, TransportPlan, check_plan
from utils.structures.maharam import embeddings as maharam_embeddings
from utils.structures.maharam import (
    CardinalCode, MaharamInvariant, first_discrepancy, flow_embeddable, is_isomorphic,
    normalize, sb_decide, tail_dominance_embeddable, tail_profile,
)
from workflows.desk_checks.utils import eighth_invariants

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def blocks(*pairs) -> MaharamInvariant:
    return MaharamInvariant(blocks=tuple((Fraction(w), k) for w, k in pairs))


SPLIT = blocks((HALF, 0), (HALF, 1))
ALEPH_ONE = blocks((1, 1))
ALEPH_ZERO = blocks((1, 0))


def _blocks(inv):
    return {k.index: w for w, k in inv.blocks}


def test_cardinal_codes_order_by_index():
    assert CardinalCode(index=0) < CardinalCode(index=2)
    assert CardinalCode.model_validate(1) == CardinalCode(index=1)
    assert str(CardinalCode(index=3)) == "aleph_3"


def test_invariant_rejects_nonpositive_weight():
    with pytest.raises(pydantic.ValidationError) as excinfo:
        MaharamInvariant(atoms=("0",), blocks=(("1", 0),))
    assert excinfo.value.errors()[0]["type"] == "positive weight"


def test_invariant_payload():
    inv = MaharamInvariant.model_validate({"atoms": ["1/2"], "blocks": [["1/4", 0], ["1/4", 1]]})
    assert inv.to_payload() == {"atoms": ["1/2"], "blocks": [["1/4", 0], ["1/4", 1]]}


def test_normalize_sorts_atoms():
    inv = normalize(MaharamInvariant(atoms=(QUARTER, HALF, QUARTER)))
    assert inv.atoms == (HALF, QUARTER, QUARTER)


def test_normalize_merges_equal_kappas():
    assert normalize(blocks((HALF, 0), (HALF, 0))).blocks == ((Fraction(1), CardinalCode(index=0)),)


def test_normalize_keeps_canonical_invariant():
    inv = MaharamInvariant(atoms=(HALF,), blocks=((QUARTER, 0), (QUARTER, 1)))
    normalized = normalize(inv)
    assert normalized.atoms == inv.atoms
    assert is_isomorphic(normalized, normalize(normalized))


def test_normalize_is_idempotent():
    shuffled = [
        MaharamInvariant(atoms=(QUARTER, HALF), blocks=((Fraction(1, 8), 0), (Fraction(1, 8), 0))),
        MaharamInvariant(blocks=((QUARTER, 0), (HALF, 2), (QUARTER, 1))),
    ]
    for inv in shuffled + eighth_invariants()[:40]:
        once = normalize(inv)
        assert normalize(once) == once


def test_is_isomorphic_is_an_equivalence():
    invariants = [normalize(inv) for inv in eighth_invariants()[:25]]
    # Rebuilt copies are distinct objects with equal contents
    copies = [MaharamInvariant.model_validate(inv.to_payload()) for inv in invariants]
    pool = invariants + copies
    for a in pool:
        assert is_isomorphic(a, a)
        for b in pool:
            assert is_isomorphic(a, b) == is_isomorphic(b, a)
            if not is_isomorphic(a, b):
                continue
            for c in pool:
                if is_isomorphic(b, c):
                    assert is_isomorphic(a, c)


def test_normalize_rejects_bad_mass():
    with pytest.raises(BadTotalMass):
        normalize(MaharamInvariant(atoms=(HALF, QUARTER)))


def test_is_isomorphic():
    assert is_isomorphic(SPLIT, SPLIT)
    assert not is_isomorphic(ALEPH_ZERO, ALEPH_ONE)
    assert not is_isomorphic(
        normalize(MaharamInvariant(atoms=(HALF, QUARTER, QUARTER))),
        normalize(MaharamInvariant(atoms=(HALF, HALF))),
    )


def test_tail_profile():
    assert tail_profile(normalize(SPLIT)) == [(CardinalCode(index=0), 1), (CardinalCode(index=1), HALF)]


def test_tail_dominance():
    assert tail_dominance_embeddable(SPLIT, ALEPH_ONE)
    assert not tail_dominance_embeddable(ALEPH_ONE, SPLIT)
    assert tail_dominance_embeddable(SPLIT, SPLIT)
    assert not tail_dominance_embeddable(ALEPH_ONE, ALEPH_ZERO)


def test_tail_dominance_needs_equal_atoms():
    a = MaharamInvariant(atoms=(HALF,), blocks=((HALF, 0),))
    b = MaharamInvariant(atoms=(QUARTER,), blocks=((Fraction(3, 4), 1),))
    assert not tail_dominance_embeddable(a, b)
    with pytest.raises(AtomMismatch):
        flow_embeddable(a, b)


def test_flow_plan_for_split_instance():
    plan = flow_embeddable(normalize(SPLIT), ALEPH_ONE)
    assert isinstance(plan, TransportPlan)
    assert plan.as_dict() == {(0, 1): HALF, (1, 1): HALF}


def test_flow_identity_plan():
    plan = flow_embeddable(ALEPH_ONE, ALEPH_ONE)
    assert plan.as_dict() == {(1, 1): Fraction(1)}


def test_flow_reversed_instance_is_infeasible():
    assert isinstance(flow_embeddable(ALEPH_ONE, normalize(SPLIT)), Infeasible)


def test_first_discrepancy():
    assert first_discrepancy(SPLIT, SPLIT) is None
    assert first_discrepancy(normalize(SPLIT), ALEPH_ONE) == (0, "kappa")
    assert first_discrepancy(blocks((1, 2)), blocks((1, 2))) is None
    a = normalize(MaharamInvariant(atoms=(HALF, HALF)))
    b = normalize(MaharamInvariant(atoms=(HALF, QUARTER, QUARTER)))
    assert first_discrepancy(a, b) == (1, "atom")


def test_sb_decide_equal():
    decision = sb_decide(normalize(SPLIT), normalize(SPLIT))
    assert decision.verdict is Verdict.ISOMORPHIC
    assert decision.witness == normalize(SPLIT)


def test_sb_decide_one_direction():
    decision = sb_decide(normalize(SPLIT), ALEPH_ONE)
    assert decision.verdict is Verdict.EMBEDS_ONLY_FORWARD
    assert decision.forward_plan is not None
    assert decision.backward_plan is None
    assert sb_decide(ALEPH_ONE, normalize(SPLIT)).verdict is Verdict.EMBEDS_ONLY_BACKWARD


def test_sb_decide_incomparable_atoms():
    a = normalize(MaharamInvariant(atoms=(HALF,), blocks=((HALF, 0),)))
    b = normalize(MaharamInvariant(atoms=(QUARTER,), blocks=((Fraction(3, 4), 0),)))
    assert sb_decide(a, b).verdict is Verdict.INCOMPARABLE


def test_eighth_family_size():
    invariants = eighth_invariants()
    assert len(invariants) == 165
    assert all(inv.total_mass == 1 for inv in invariants)


def test_dominance_agrees_with_flow_exhaustively():
    invariants = eighth_invariants()
    for a in invariants:
        for b in invariants:
            dominant = tail_dominance_embeddable(a, b)
            result = flow_embeddable(a, b)
            assert dominant == isinstance(result, TransportPlan)
            if dominant:
                assert check_plan(result, _blocks(a), _blocks(b), lambda s, t: s <= t) == []
            if dominant and tail_dominance_embeddable(b, a):
                assert is_isomorphic(a, b)


def test_sb_decide_rejects_flow_disagreement(monkeypatch):
    monkeypatch.setattr(
        maharam_embeddings, "flow_embeddable",
        lambda a, b: Infeasible(shortfall=HALF, blocking_sources=[1]),
    )
    with pytest.raises(InternalContradiction):
        sb_decide(normalize(SPLIT), ALEPH_ONE)
