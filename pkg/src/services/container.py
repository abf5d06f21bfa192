"""
Dependency Injection Container for the exciton service.

Uses dependency-injector to build the numerical configuration once and
share a single ExcitonService between requests (API) or per invocation
(CLI, which overrides providers from its flags).
"""

from dependency_injector import containers, providers

from src.core.config import settings
from src.exciton.models import QuadratureSpec
from src.exciton.oracle import GridSpec
from src.services.exciton_service import ExcitonService


class ExcitonContainer(containers.DeclarativeContainer):
    """
    Dependency injection container for the exciton library.

    Manages singleton instances of:
    - QuadratureSpec (from settings, overridable by --quad-panels)
    - GridSpec of the finite-difference oracle
    - ExcitonService (created lazily on first use)
    """

    # Configuration
    config = providers.Configuration()
    config.root_tol.from_value(settings.root_tol)
    config.max_workers.from_value(settings.max_workers)

    quadrature = providers.Singleton(QuadratureSpec.from_settings)

    grid = providers.Singleton(GridSpec.from_settings)

    service = providers.Singleton(
        ExcitonService,
        quad=quadrature,
        grid=grid,
        root_tol=config.root_tol,
        max_workers=config.max_workers,
    )
