"""Per-radius engines driven by the sweep runner."""

from .base_engine import BaseEngine
from .coulomb_engine import CoulombEngine
from .oracle_engine import OracleEngine
from .variational_engine import VariationalEngine

__all__ = [
    "BaseEngine",
    "CoulombEngine",
    "OracleEngine",
    "VariationalEngine",
]
