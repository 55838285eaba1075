#!/usr/bin/env python3
"""
Operation tracking decorators.
"""

from .operation import log_operation

__all__ = ["log_operation"]
