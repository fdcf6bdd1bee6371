"""
Separable randomizations classified by density profiles over a model catalog.
"""
from .models import DensityProfile, ModelCatalog
from .catalogs import (
    CatalogReport, all_preorders, dlo_counterexample, ehrenfeucht_catalog, embeds_graph, extends,
    inspect_catalog, linear_extension, sb_failure_witness, up_closed_sets, validate_catalog,
)
from .profiles import (
    RandomizationDecision, flow_embeddable, linear_extension_tails, sb_decide_randomization,
    upset_dominance_embeddable,
)

__all__ = [
    'ModelCatalog', 'DensityProfile', 'CatalogReport', 'RandomizationDecision',
    'validate_catalog', 'inspect_catalog', 'linear_extension', 'extends', 'up_closed_sets',
    'embeds_graph', 'all_preorders', 'upset_dominance_embeddable', 'flow_embeddable',
    'linear_extension_tails', 'sb_decide_randomization', 'dlo_counterexample',
    'ehrenfeucht_catalog', 'sb_failure_witness',
]
