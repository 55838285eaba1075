#!/usr/bin/env python3
"""
One-call logging setup for scripts and the CLI.
"""

from typing import Dict, Optional

from ..configuration.configurator import LoggingConfigurator


def configure_logging(
    level: Optional[str] = None,
    structured: Optional[bool] = None,
    module_levels: Optional[Dict[str, str]] = None,
    log_file: Optional[str] = None,
    suppression_mode: Optional[str] = None,
) -> None:
    """
    Configure package logging.

    RELAY_PRICING_* environment variables take precedence over these
    arguments.

    Args:
        level: Global log level
        structured: Emit JSON records instead of coloured lines
        module_levels: Per-logger level overrides
        log_file: Also write records to this file
        suppression_mode: cli, library or development
    """
    LoggingConfigurator.configure(
        global_level=level,
        enable_structured=structured,
        module_levels=module_levels,
        log_file=log_file,
        external_suppression_mode=suppression_mode,
    )
