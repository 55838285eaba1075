#!/usr/bin/env python3
"""
Third-party logger suppression.
"""

from .external import ExternalLibrarySuppressor
from .strategies import SuppressionStrategy, get_suppression_strategy

__all__ = [
    "ExternalLibrarySuppressor",
    "SuppressionStrategy",
    "get_suppression_strategy",
]
