"""
Classification of models of Pr by their Maharam invariants.
"""
from .models import CardinalCode, MaharamInvariant
from .embeddings import (
    MaharamDecision, first_discrepancy, flow_embeddable, is_isomorphic, normalize,
    sb_decide, tail_dominance_embeddable, tail_profile,
)

__all__ = [
    'CardinalCode', 'MaharamInvariant', 'MaharamDecision',
    'normalize', 'is_isomorphic', 'tail_dominance_embeddable', 'flow_embeddable',
    'sb_decide', 'first_discrepancy', 'tail_profile',
]
