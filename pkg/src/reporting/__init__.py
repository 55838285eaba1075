from src.reporting.csv_writer import SWEEP_HEADER, write_sweep_csv
from src.reporting.markdown_builder import MarkdownBuilder, fmt
from src.reporting.renderers import (
    render_construction,
    render_optimum,
    render_poa,
    render_suite,
    render_verification,
)

__all__ = [
    "SWEEP_HEADER",
    "MarkdownBuilder",
    "fmt",
    "render_construction",
    "render_optimum",
    "render_poa",
    "render_suite",
    "render_verification",
    "write_sweep_csv",
]
