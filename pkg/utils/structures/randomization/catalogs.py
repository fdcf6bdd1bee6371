"""
Order-theoretic checks on model catalogs.

A catalog whose embeddability relation is antisymmetric is exactly a theory
with the SB-property at catalog level.
"""
from itertools import permutations
from typing import ClassVar, Iterator, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..common import get_logger
from ..errors import NotAPartialOrder, NotAPreorder
from .models import DensityProfile, ModelCatalog

logger = get_logger(__name__)


class CatalogReport(BaseModel):
    """Result of validate_catalog."""

    reflexive: bool
    transitive: bool
    antisymmetric: bool
    mutual_pairs: list[tuple[str, str]]

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    @property
    def is_preorder(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def is_partial_order(self) -> bool:
        return self.is_preorder and self.antisymmetric


def embeds_graph(catalog: ModelCatalog) -> nx.DiGraph:
    """Directed graph with an arc i -> j whenever i ≠ j and i embeds into j."""
    graph = nx.DiGraph()
    graph.add_nodes_from(catalog.ids)
    graph.add_edges_from(catalog.pairs())
    return graph


def inspect_catalog(catalog: ModelCatalog) -> CatalogReport:
    """Check reflexivity, transitivity and antisymmetry without raising."""
    n = len(catalog.ids)
    e = catalog.embeds
    reflexive = all(e[i][i] for i in range(n))
    transitive = all(
        e[i][k] for i in range(n) for j in range(n) for k in range(n) if e[i][j] and e[j][k]
    )
    mutual = [
        (catalog.ids[i], catalog.ids[j])
        for i in range(n) for j in range(i + 1, n)
        if e[i][j] and e[j][i]
    ]
    return CatalogReport(
        reflexive=reflexive, transitive=transitive, antisymmetric=not mutual, mutual_pairs=mutual
    )


def validate_catalog(catalog: ModelCatalog) -> CatalogReport:
    """
    Validate that embeds is a preorder and report antisymmetry.

    Raises:
        NotAPreorder: If reflexivity or transitivity fails
    """
    report = inspect_catalog(catalog)
    if not report.reflexive:
        raise NotAPreorder("embeds is not reflexive")
    if not report.transitive:
        raise NotAPreorder("embeds is not transitive")
    if not report.antisymmetric:
        logger.info(f"catalog is a preorder but not a partial order: mutual pairs {report.mutual_pairs}")
    return report


def linear_extension(catalog: ModelCatalog) -> list[str]:
    """
    A total order extending embeds, ties broken by identifier.

    Raises:
        NotAPreorder: If embeds is not a preorder
        NotAPartialOrder: If embeds is not antisymmetric
    """
    report = validate_catalog(catalog)
    if not report.is_partial_order:
        raise NotAPartialOrder(f"mutually embeddable ids: {report.mutual_pairs}")
    return list(nx.lexicographical_topological_sort(embeds_graph(catalog), key=str))


def extends(catalog: ModelCatalog, order: list[str]) -> bool:
    """Whether `order` is a total order on the ids extending embeds."""
    if sorted(order) != sorted(catalog.ids):
        return False
    position = {model_id: k for k, model_id in enumerate(order)}
    return all(position[i] < position[j] for i, j in catalog.pairs())


def up_closed_sets(catalog: ModelCatalog) -> Iterator[frozenset[str]]:
    """
    Every up-closed set of the embeds preorder, the empty set first.

    Ids are decided in catalog order; including an id forces everything
    above it in, excluding it forces everything below it out, so no branch
    dead-ends.
    """
    graph = embeds_graph(catalog)
    up = {i: frozenset(nx.descendants(graph, i)) | {i} for i in catalog.ids}
    down = {i: frozenset(nx.ancestors(graph, i)) | {i} for i in catalog.ids}
    ids = catalog.ids

    def extend(k: int, inside: frozenset, outside: frozenset) -> Iterator[frozenset[str]]:
        if k == len(ids):
            yield inside
            return
        i = ids[k]
        if i in inside or i in outside:
            yield from extend(k + 1, inside, outside)
            return
        yield from extend(k + 1, inside, outside | down[i])
        yield from extend(k + 1, inside | up[i], outside)

    yield from extend(0, frozenset(), frozenset())


def dlo_counterexample() -> tuple[ModelCatalog, DensityProfile, DensityProfile]:
    """
    Two bi-embeddable but non-isomorphic model types (Q ⊔ R and R ⊔ Q) with
    the Dirac profiles on each.
    """
    catalog = ModelCatalog.from_pairs(("M1", "M2"), [("M1", "M2"), ("M2", "M1")])
    return catalog, DensityProfile.dirac(catalog, "M1"), DensityProfile.dirac(catalog, "M2")


def ehrenfeucht_catalog() -> ModelCatalog:
    """The three countable models of Ehrenfeucht's theory: prime ≤ middle ≤ saturated."""
    return ModelCatalog.chain(("M0", "M1", "M2"))


def sb_failure_witness(catalog: ModelCatalog) -> Optional[tuple[DensityProfile, DensityProfile]]:
    """
    Two unequal bi-dominant profiles when embeds is not antisymmetric.

    Any up-closed set containing one member of a mutual pair contains the
    other, so the Dirac profiles on the pair dominate each other.

    Raises:
        NotAPreorder: If embeds is not a preorder
    """
    report = validate_catalog(catalog)
    if report.antisymmetric:
        return None
    i, j = report.mutual_pairs[0]
    return DensityProfile.dirac(catalog, i), DensityProfile.dirac(catalog, j)


def _canonical_key(catalog: ModelCatalog) -> tuple[bool, ...]:
    n = len(catalog.ids)
    e = catalog.embeds
    return min(
        tuple(e[order[a]][order[b]] for a in range(n) for b in range(n))
        for order in permutations(range(n))
    )


def all_preorders(ids, up_to_isomorphism: bool = False) -> Iterator[ModelCatalog]:
    """
    Every preorder on `ids` (exhaustive sweeps; practical up to 4 ids).

    With up_to_isomorphism only one relabeling of each preorder is produced.
    """
    ids = tuple(ids)
    candidates = list(permutations(ids, 2))
    seen = set()
    for mask in range(1 << len(candidates)):
        chosen = [pair for k, pair in enumerate(candidates) if (mask >> k) & 1]
        catalog = ModelCatalog.from_pairs(ids, chosen)
        if not inspect_catalog(catalog).transitive:
            continue
        if up_to_isomorphism:
            key = _canonical_key(catalog)
            if key in seen:
                continue
            seen.add(key)
        yield catalog
