"""Services shared by the CLI and the HTTP API."""

from .container import ExcitonContainer
from .exciton_service import ExcitonService, UnitConversion, VariationalReport, build_sweep_config

__all__ = [
    "ExcitonContainer",
    "ExcitonService",
    "UnitConversion",
    "VariationalReport",
    "build_sweep_config",
]
