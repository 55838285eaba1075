#!/usr/bin/env python3
"""
Operation tracking decorator.

Wraps solver entry points so every call logs its start, its completion
with the elapsed time, and its failure with the exception type.
"""

import functools
import time
from typing import Any, Callable, Dict, Optional

from ..utils.dynamic import get_logger


def log_operation(
    operation_name: Optional[str] = None,
    log_args: bool = False,
    summarize: Optional[Callable[[Any], Dict[str, Any]]] = None,
    log_duration: bool = True,
) -> Callable[[Callable], Callable]:
    """
    Decorator for automatic operation logging with timing.

    Args:
        operation_name: Custom operation name (defaults to function name)
        log_args: Whether to log the repr of the arguments
        summarize: Maps the result to extra fields for the completion record
        log_duration: Whether to log execution duration

    Returns:
        Decorated function with automatic operation logging

    Example:
        @log_operation("social_optimum", summarize=lambda r: {"gap": r.gap})
        def solve_social_optimum(net, link_costs, session_rate): ...
    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            logger = get_logger(func.__module__)
            op_name = operation_name or func.__name__

            extra: Dict[str, Any] = {"operation": op_name}
            if log_args and (args or kwargs):
                extra["function_args"] = repr(args)
                extra["function_kwargs"] = repr(kwargs)
            logger.debug("Starting %s", op_name, extra=extra)

            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                if log_duration:
                    extra["duration_ms"] = round(
                        (time.perf_counter() - start_time) * 1000, 2
                    )
                extra["error"] = str(e)
                extra["error_type"] = type(e).__name__
                logger.error("Failed %s: %s", op_name, e, extra=extra)
                raise

            if log_duration:
                extra["duration_ms"] = round(
                    (time.perf_counter() - start_time) * 1000, 2
                )
            if summarize is not None:
                extra.update(summarize(result))
            logger.debug("Completed %s", op_name, extra=extra)
            return result

        return wrapper

    return decorator
