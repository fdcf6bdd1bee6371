"""Analyzers for the desk-scale sweeps."""

from .spectral_analyzer import SpectralAnalyzer
from .maharam_analyzer import MaharamAnalyzer
from .tower_analyzer import TowerAnalyzer
from .randomization_analyzer import RandomizationAnalyzer

__all__ = [
    'SpectralAnalyzer',
    'MaharamAnalyzer',
    'TowerAnalyzer',
    'RandomizationAnalyzer',
]
