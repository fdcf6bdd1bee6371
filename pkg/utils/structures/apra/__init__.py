"""
Finite approximations of atomless probability algebras with an automorphism.
"""
from .models import (
    BlockedPermutationSystem, ConjugacyCertificate, SupDistance, TowerCertificate,
    conjugate, cycle_decomposition, cycle_system, from_cycles, permutation_cycles, random_system,
)
from .metrics import sup_distance, symmetric_difference_measure, uniform_distance
from .towers import (
    check_tower, genericity_defect, perturbation_sequence, phi_from_towers, rokhlin_tower,
    tower_conjugacy,
)

__all__ = [
    'BlockedPermutationSystem', 'TowerCertificate', 'ConjugacyCertificate', 'SupDistance',
    'cycle_decomposition', 'permutation_cycles', 'conjugate', 'from_cycles', 'cycle_system',
    'random_system', 'uniform_distance', 'sup_distance', 'symmetric_difference_measure',
    'genericity_defect', 'rokhlin_tower', 'check_tower', 'phi_from_towers', 'tower_conjugacy',
    'perturbation_sequence',
]
