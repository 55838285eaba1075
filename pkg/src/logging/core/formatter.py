#!/usr/bin/env python3
"""
Formatters for relay_pricing logging.

OTelFormatter emits one JSON object per record for log collectors;
HumanReadableFormatter writes coloured single lines for terminals. Both
append the ``extra`` fields solvers attach (gaps, iteration counts,
node names), converting numpy scalars and arrays to plain values.
"""

import json
import logging
from datetime import datetime
from typing import Any, Dict

_STANDARD_FIELDS = frozenset(
    vars(logging.LogRecord("", 0, "", 0, "", (), None)).keys()
) | {"message", "asctime", "taskName"}


def _plain(value: Any) -> Any:
    """Turn numpy values into JSON friendly Python values."""
    tolist = getattr(value, "tolist", None)
    if callable(tolist):
        return tolist()
    return value


def extract_extra_fields(record: logging.LogRecord) -> Dict[str, Any]:
    """Fields passed through ``extra=`` on the logging call."""
    return {
        key: _plain(value)
        for key, value in vars(record).items()
        if key not in _STANDARD_FIELDS and not key.startswith("_")
    }


class OTelFormatter(logging.Formatter):
    """OpenTelemetry-style JSON formatter."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "line_number": record.lineno,
        }

        if record.exc_info and record.exc_info[0] is not None:
            log_entry["exception"] = {
                "type": record.exc_info[0].__name__,
                "message": str(record.exc_info[1]),
                "traceback": self.formatException(record.exc_info),
            }

        extra = extract_extra_fields(record)
        if extra:
            log_entry["extra"] = extra

        return json.dumps(log_entry, default=str)


class HumanReadableFormatter(logging.Formatter):
    """Single line formatter with coloured level names."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(
        self,
        include_module: bool = True,
        include_extra: bool = True,
        use_color: bool = True,
        max_extra_length: int = 100,
    ):
        super().__init__()
        self.include_module = include_module
        self.include_extra = include_extra
        self.use_color = use_color
        self.max_extra_length = max_extra_length

    def format(self, record: logging.LogRecord) -> str:
        timestamp = datetime.fromtimestamp(record.created).strftime(
            "%Y-%m-%d %H:%M:%S"
        )
        level = f"{record.levelname:8}"
        if self.use_color and record.levelname in self.COLORS:
            level = f"{self.COLORS[record.levelname]}{level}{self.RESET}"

        parts = [timestamp, level]
        if self.include_module:
            parts.append(f"{self.shorten_logger_name(record.name):25}")
        parts.append(record.getMessage())
        line = " | ".join(parts)

        if self.include_extra:
            extra = extract_extra_fields(record)
            if extra:
                line += " | " + " | ".join(
                    f"{key}={self._truncate(value)}" for key, value in extra.items()
                )

        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line

    def _truncate(self, value: Any) -> str:
        text = str(value)
        if len(text) > self.max_extra_length:
            return text[: self.max_extra_length - 3] + "..."
        return text

    @staticmethod
    def shorten_logger_name(name: str, max_length: int = 25) -> str:
        """Abbreviate the middle parts of long dotted names."""
        if len(name) <= max_length:
            return name
        parts = name.split(".")
        if len(parts) <= 2:
            return name[: max_length - 3] + "..."
        middle = ".".join(p[0] for p in parts[1:-1])
        shortened = f"{parts[0]}.{middle}.{parts[-1]}"
        if len(shortened) <= max_length:
            return shortened
        return shortened[: max_length - 3] + "..."
