#!/usr/bin/env python3
"""
Numbered log files: logs/relay_pricing_001.log, logs/relay_pricing_002.log, ...
"""

import re
from pathlib import Path
from typing import Optional

_NUMBERED = re.compile(r"^relay_pricing_(\d+)\.log$")


class LogFilePathGenerator:
    """Picks the next free numbered log file in a directory."""

    DEFAULT_LOG_DIR = "logs"

    @classmethod
    def get_next_log_file_path(cls, log_dir: Optional[str] = None) -> Path:
        """One past the highest numbered log file already in ``log_dir``."""
        directory = cls.ensure_log_directory(log_dir)
        taken = (
            int(match.group(1))
            for path in directory.iterdir()
            if path.is_file() and (match := _NUMBERED.match(path.name))
        )
        return directory / f"relay_pricing_{max(taken, default=0) + 1:03d}.log"

    @classmethod
    def ensure_log_directory(cls, log_dir: Optional[str] = None) -> Path:
        directory = Path(log_dir or cls.DEFAULT_LOG_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        return directory
