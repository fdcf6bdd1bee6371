"""
Desk-scale sweeps that check the decision procedures against independent
oracles on exhaustive and random instance families.
"""
from .main import FAMILIES, collect_sweep_results, run_desk_checks

__all__ = ['FAMILIES', 'collect_sweep_results', 'run_desk_checks']
