"""Instance families shared by the desk checks and the test-suite."""
from .families import (
    conjugate_pair, eighth_invariants, quarter_profiles, random_orthogonal, random_psd,
    random_small_pair, random_symmetric, random_tower_instance, small_descriptions,
)

__all__ = [
    'conjugate_pair', 'eighth_invariants', 'quarter_profiles', 'random_orthogonal', 'random_psd',
    'random_small_pair', 'random_symmetric', 'random_tower_instance', 'small_descriptions',
]
