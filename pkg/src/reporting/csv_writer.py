"""Sweep rows as CSV for external plotting."""

from __future__ import annotations

from dataclasses import astuple
from typing import Iterable, TextIO

import pandas as pd

from src.schemas.reports import SweepRow

SWEEP_HEADER = ("param", "opt_cost", "eq_cost", "poa")


def sweep_frame(rows: Iterable[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([astuple(row) for row in rows], columns=list(SWEEP_HEADER))


def write_sweep_csv(rows: Iterable[SweepRow], stream: TextIO) -> None:
    """Header ``param,opt_cost,eq_cost,poa``; values at nine significant digits."""
    sweep_frame(rows).to_csv(stream, index=False, float_format="%.9g", lineterminator="\n")
