# workflows/desk_checks/analyzers/maharam_analyzer.py
from utils.structures.flows import TransportPlan, check_plan
from utils.structures.maharam import flow_embeddable, is_isomorphic, tail_dominance_embeddable
from ..utils.families import eighth_invariants
from .base import BaseAnalyzer


def _blocks(inv):
    return {k.index: w for w, k in inv.blocks}


class MaharamAnalyzer(BaseAnalyzer):
    """Exhaustive check of the SB decision for probability algebras."""

    family = "maharam"
    criteria = {
        "4a": "tail dominance agrees with the flow oracle; every plan checks out",
        "4b": "bi-dominant invariants are equal",
    }

    def run_checks(self) -> None:
        invariants = eighth_invariants()
        dominance = {}
        for i, a in enumerate(invariants):
            for j, b in enumerate(invariants):
                dominant = tail_dominance_embeddable(a, b)
                dominance[i, j] = dominant
                result = flow_embeddable(a, b)
                feasible = isinstance(result, TransportPlan)
                problems = check_plan(result, _blocks(a), _blocks(b), lambda s, t: s <= t) if feasible else []
                self.record(
                    "4a", f"{i}->{j}", dominant == feasible and not problems,
                    f"dominance {dominant}, flow {feasible} {'; '.join(problems)}".strip(),
                )

        for (i, j), dominant in dominance.items():
            if i < j and dominant and dominance[j, i]:
                a, b = invariants[i], invariants[j]
                self.record("4b", f"{i}<->{j}", is_isomorphic(a, b), f"{a.to_payload()} vs {b.to_payload()}")
        # Diagonal pairs are bi-dominant by reflexivity
        for i, a in enumerate(invariants):
            self.record("4b", f"{i}<->{i}", dominance[i, i] and is_isomorphic(a, a))
