"""Dependencies for API routes."""

from src.services.container import ExcitonContainer
from src.services.exciton_service import ExcitonService

# Global container instance (initialized once)
_container: ExcitonContainer | None = None


def get_container() -> ExcitonContainer:
    global _container

    if _container is None:
        _container = ExcitonContainer()

    return _container


def get_exciton_service() -> ExcitonService:
    """
    Get the ExcitonService instance via dependency injection.

    The service is a singleton holding no per-request state, so it is
    safely shared across requests.

    Returns:
        ExcitonService instance (singleton)
    """
    return get_container().service()
