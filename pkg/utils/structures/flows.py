"""
Exact-rational transport feasibility.

A transport plan moves the mass of source classes onto target classes along
allowed arcs only, so that every source is emptied and every target filled.
Feasibility is a max-flow question: the network source -> sources -> targets
-> sink is saturated iff a plan exists. All weights are rationals; they are
scaled by the LCM of their denominators so the flow runs on integers, and
the plan is scaled back to exact Fractions.
"""
import math
from fractions import Fraction
from typing import Callable, ClassVar, Mapping, Union

import networkx as nx
from networkx.algorithms.flow import edmonds_karp
from pydantic import BaseModel, ConfigDict, Field

from .common import Rational, get_logger

logger = get_logger(__name__)

Label = Union[int, str]

_SOURCE = "__source__"
_SINK = "__sink__"


class PlanEntry(BaseModel):
    """Mass moved from one source class to one target class."""

    source: Label
    target: Label
    amount: Rational

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)


class TransportPlan(BaseModel):
    """
    Certificate of embeddability at the invariant level.

    Entries with zero mass are omitted. Row sums equal the source weights,
    column sums equal the target weights and every entry sits on an allowed arc.
    """

    entries: list[PlanEntry] = Field(default_factory=list)

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    def as_dict(self) -> dict[tuple[Label, Label], Fraction]:
        return {(e.source, e.target): e.amount for e in self.entries}

    def row_sums(self) -> dict[Label, Fraction]:
        sums: dict[Label, Fraction] = {}
        for e in self.entries:
            sums[e.source] = sums.get(e.source, Fraction(0)) + e.amount
        return sums

    def column_sums(self) -> dict[Label, Fraction]:
        sums: dict[Label, Fraction] = {}
        for e in self.entries:
            sums[e.target] = sums.get(e.target, Fraction(0)) + e.amount
        return sums


class Infeasible(BaseModel):
    """
    No plan exists.

    `blocking_sources` is a set of source classes whose total mass exceeds the
    total mass of every target they may reach (a violated Hall condition);
    `shortfall` is how much mass cannot be moved.
    """

    shortfall: Rational
    blocking_sources: list[Label] = Field(default_factory=list)

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)


def _scale(weights: list[Fraction]) -> int:
    return math.lcm(*(w.denominator for w in weights)) if weights else 1


def transport_plan(
    sources: Mapping[Label, Fraction],
    targets: Mapping[Label, Fraction],
    allowed: Callable[[Label, Label], bool],
) -> Union[TransportPlan, Infeasible]:
    """
    Find a transport plan from `sources` to `targets` along allowed arcs.

    Args:
        sources: Mass of each source class (zero entries are ignored)
        targets: Mass of each target class (zero entries are ignored)
        allowed: allowed(i, j) is True iff mass may move from i to j

    Returns:
        TransportPlan if one exists, Infeasible otherwise
    """
    src = {k: Fraction(v) for k, v in sources.items() if v != 0}
    dst = {k: Fraction(v) for k, v in targets.items() if v != 0}
    if sum(src.values(), Fraction(0)) != sum(dst.values(), Fraction(0)):
        shortfall = abs(sum(src.values(), Fraction(0)) - sum(dst.values(), Fraction(0)))
        return Infeasible(shortfall=shortfall, blocking_sources=sorted(src, key=str))

    scale = _scale(list(src.values()) + list(dst.values()))
    graph = nx.DiGraph()
    graph.add_node(_SOURCE)
    graph.add_node(_SINK)
    for i, w in src.items():
        graph.add_edge(_SOURCE, ("src", i), capacity=int(w * scale))
    for j, w in dst.items():
        graph.add_edge(("dst", j), _SINK, capacity=int(w * scale))
    for i in src:
        for j in dst:
            if allowed(i, j):
                # Uncapacitated: only the endpoints limit the flow
                graph.add_edge(("src", i), ("dst", j))

    total = int(sum(src.values(), Fraction(0)) * scale)
    flow_value, flow = nx.maximum_flow(graph, _SOURCE, _SINK, flow_func=edmonds_karp)
    logger.debug(f"transport flow {flow_value}/{total} (scale {scale})")

    if flow_value < total:
        _, (reachable, _) = nx.minimum_cut(graph, _SOURCE, _SINK, flow_func=edmonds_karp)
        blocking = sorted(
            (node[1] for node in reachable if isinstance(node, tuple) and node[0] == "src"),
            key=str,
        )
        return Infeasible(
            shortfall=Fraction(total - flow_value, scale), blocking_sources=blocking
        )

    entries = []
    for i in src:
        for (kind, j), amount in flow[("src", i)].items():
            if amount > 0:
                entries.append(PlanEntry(source=i, target=j, amount=Fraction(amount, scale)))
    entries.sort(key=lambda e: (str(e.source), str(e.target)))
    return TransportPlan(entries=entries)


def check_plan(
    plan: TransportPlan,
    sources: Mapping[Label, Fraction],
    targets: Mapping[Label, Fraction],
    allowed: Callable[[Label, Label], bool],
) -> list[str]:
    """
    Re-check a plan independently of the solver.

    Returns:
        list[str]: Descriptions of every violated condition (empty if valid)
    """
    problems = []
    for e in plan.entries:
        if e.amount < 0:
            problems.append(f"negative entry {e.source}->{e.target}")
        if e.amount > 0 and not allowed(e.source, e.target):
            problems.append(f"entry on forbidden arc {e.source}->{e.target}")

    rows, cols = plan.row_sums(), plan.column_sums()
    for key in set(sources) | set(rows):
        if rows.get(key, Fraction(0)) != Fraction(sources.get(key, 0)):
            problems.append(f"row sum of {key} is {rows.get(key, 0)}, expected {sources.get(key, 0)}")
    for key in set(targets) | set(cols):
        if cols.get(key, Fraction(0)) != Fraction(targets.get(key, 0)):
            problems.append(f"column sum of {key} is {cols.get(key, 0)}, expected {targets.get(key, 0)}")
    return problems
