"""Global exception handlers for the FastAPI application and the CLI."""

from fastapi import Request
from fastapi.exceptions import HTTPException
from fastapi.responses import JSONResponse

from src.core.exceptions import ExcitonError
from src.core.logging_config import logger


class ExceptionHandlerRegistry:
    """Registry for global exception handlers."""

    @staticmethod
    async def exciton_error_handler(request: Request, exc: ExcitonError) -> JSONResponse:
        """
        Handle errors raised deliberately by the numerical library.

        Domain and configuration errors map to 422, accuracy and output
        failures to 500; the status code lives on the exception class.

        Args:
            request: FastAPI request object
            exc: ExcitonError subclass instance

        Returns:
            JSONResponse with error details
        """
        logger.warning(
            f"{type(exc).__name__} in {request.method} {request.url.path}: {exc}"
        )
        return JSONResponse(
            status_code=exc.status_code,
            content={
                "detail": "The computation could not be completed",
                "error_type": type(exc).__name__,
                "message": str(exc),
            },
        )

    @staticmethod
    async def http_exception_handler(request: Request, exc: HTTPException) -> JSONResponse:
        """Handle HTTP exceptions - return them as-is."""
        return JSONResponse(
            status_code=exc.status_code,
            content={"detail": exc.detail}
        )

    @staticmethod
    async def global_exception_handler(request: Request, exc: Exception) -> JSONResponse:
        """
        Global exception handler for all unhandled exceptions.

        Args:
            request: FastAPI request object
            exc: Exception that was raised

        Returns:
            JSONResponse with error details
        """
        logger.error(
            f"Unhandled exception in {request.method} {request.url.path}: {exc}",
            exc_info=True
        )
        return JSONResponse(
            status_code=500,
            content={
                "detail": "An internal server error occurred",
                "error_type": type(exc).__name__,
                "message": str(exc)
            }
        )

    @staticmethod
    def exit_code_for(exc: BaseException) -> int:
        """
        Map an exception to the CLI exit code.

        0 success, 2 usage error, 3 numerical non-convergence, 4 I/O.
        Unknown exceptions are logged with traceback and map to 1.
        """
        if isinstance(exc, ExcitonError):
            logger.error(f"{type(exc).__name__}: {exc}")
            return exc.exit_code
        if isinstance(exc, OSError):
            logger.error(f"I/O failure: {exc}")
            return 4
        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        return 1

    @classmethod
    def register_handlers(cls, app):
        """
        Register all exception handlers with the FastAPI app.

        Args:
            app: FastAPI application instance
        """
        app.add_exception_handler(ExcitonError, cls.exciton_error_handler)
        app.add_exception_handler(HTTPException, cls.http_exception_handler)
        app.add_exception_handler(Exception, cls.global_exception_handler)
        logger.info("Global exception handlers registered")
