"""
Timing decorator for long-running entry points (synthesis, Fock-space
integration, catalog verification).
"""
import functools
import logging
import time

logger = logging.getLogger(__name__)


def log_timing(name: str):
    """
    Log start, completion (with elapsed seconds) and failure of the wrapped call.

    Usage:
        @log_timing("synthesize")
        def synthesize(problem):
            ...
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            logger.info("[%s] timer started", name)
            try:
                result = func(*args, **kwargs)
            except Exception:
                elapsed = time.perf_counter() - start
                logger.warning("[%s] failed after %.3f s", name, elapsed, exc_info=True)
                raise
            elapsed = time.perf_counter() - start
            logger.info("[%s] completed in %.3f s", name, elapsed)
            return result

        return wrapper

    return decorator
