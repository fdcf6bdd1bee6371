"""
Spectral calculus for real symmetric matrices and symbolic spectral
descriptions.
"""
from .models import OrthogonalMap, RiemannPartition, SelfAdjointOperator, SpectralDescription, UniformGrid
from .calculus import (
    abs_operator, describe, eigendecompose, identity_decomposition, operator_norm,
    positive_projection, positive_sqrt, projection_pair_embeddable,
    projection_pair_invariant, spectral_riemann_sum,
)
from .equivalence import (
    approximate_unitary, approximate_unitary_sequence, common_grid, common_partition,
    description_embeddable, occupied_cells, operator_embeddable, projection_pair_isomorphism,
    shift_example, spectrally_equivalent, unitary_residual,
)

__all__ = [
    'SelfAdjointOperator', 'OrthogonalMap', 'SpectralDescription', 'RiemannPartition', 'UniformGrid',
    'eigendecompose', 'operator_norm', 'positive_sqrt', 'abs_operator',
    'positive_projection', 'identity_decomposition', 'spectral_riemann_sum',
    'describe', 'projection_pair_invariant', 'projection_pair_embeddable',
    'spectrally_equivalent', 'description_embeddable', 'operator_embeddable',
    'shift_example', 'common_grid', 'common_partition', 'occupied_cells', 'approximate_unitary',
    'approximate_unitary_sequence', 'unitary_residual', 'projection_pair_isomorphism',
]
