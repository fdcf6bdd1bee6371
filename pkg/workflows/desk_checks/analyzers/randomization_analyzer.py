# workflows/desk_checks/analyzers/randomization_analyzer.py
from utils.structures.common import Verdict
from utils.structures.flows import TransportPlan, check_plan
from utils.structures.randomization import (
    all_preorders, dlo_counterexample, flow_embeddable, inspect_catalog, sb_decide_randomization,
    sb_failure_witness, upset_dominance_embeddable,
)
from ..utils.families import quarter_profiles
from .base import BaseAnalyzer

CATALOG_IDS = ("M0", "M1", "M2", "M3")


class RandomizationAnalyzer(BaseAnalyzer):
    """Up-set dominance against the flow oracle, and the failure of SB on preorders."""

    family = "randomization"
    criteria = {
        "7a": "up-set dominance agrees with the flow oracle on every preorder",
        "7b": "bi-dominant profiles are equal on partial orders",
        "8": "every non-antisymmetric preorder yields an SB failure witness",
    }

    def __init__(self, seed: int, max_ids: int = 4):
        super().__init__(seed)
        self.max_ids = max_ids

    def run_checks(self) -> None:
        for size in range(1, self.max_ids + 1):
            # Every profile pair is tried, so one labeling per preorder suffices
            for c, catalog in enumerate(all_preorders(CATALOG_IDS[:size], up_to_isomorphism=True)):
                self._check_catalog(f"{size} ids #{c}", catalog)
        self._check_dlo()

    def _check_catalog(self, label: str, catalog) -> None:
        partial = inspect_catalog(catalog).antisymmetric
        profiles = quarter_profiles(catalog)
        dominance = {}
        for i, p in enumerate(profiles):
            for j, q in enumerate(profiles):
                dominant = upset_dominance_embeddable(p, q)
                dominance[i, j] = dominant
                result = flow_embeddable(p, q)
                feasible = isinstance(result, TransportPlan)
                problems = check_plan(result, p.rho, q.rho, catalog.embeds_into) if feasible else []
                self.record("7a", f"{label} {i}->{j}", dominant == feasible and not problems,
                            f"dominance {dominant}, flow {feasible} {'; '.join(problems)}".strip())

        if partial:
            for (i, j), dominant in dominance.items():
                if i <= j and dominant and dominance[j, i]:
                    self.record("7b", f"{label} {i}<->{j}", profiles[i].same_density(profiles[j]),
                                f"{profiles[i].rho} vs {profiles[j].rho}")
        else:
            witness = sb_failure_witness(catalog)
            ok = (
                witness is not None
                and not witness[0].same_density(witness[1])
                and upset_dominance_embeddable(*witness)
                and upset_dominance_embeddable(witness[1], witness[0])
            )
            self.record("8", label, ok, f"mutual pairs {inspect_catalog(catalog).mutual_pairs}")

    def _check_dlo(self) -> None:
        catalog, p, q = dlo_counterexample()
        decision = sb_decide_randomization(p, q)
        ok = (
            decision.verdict is Verdict.SB_FAILURE_WITNESS
            and decision.forward_plan is not None
            and decision.backward_plan is not None
            and not p.same_density(q)
        )
        self.record("8", "DLO counterexample", ok, f"verdict {decision.verdict.value}")
