"""
Core functionality for sb-kit: paths and configuration.
"""

from .paths import paths
from .config import Config

__all__ = ['paths', 'Config']
