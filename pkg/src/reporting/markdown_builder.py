"""
Markdown building utilities for CLI reports.

Gives the renderers a fluent interface instead of hand-assembled line lists.
"""

from typing import Any, Sequence


def fmt(value: Any) -> str:
    """Nine significant digits for floats, str() for everything else."""
    if isinstance(value, bool) or value is None:
        return "-" if value is None else ("yes" if value else "no")
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


class MarkdownBuilder:
    """Fluent builder for the markdown text reports."""

    def __init__(self):
        self._content = []

    def add_header(self, text: str) -> "MarkdownBuilder":
        """Add a top-level header."""
        self._content.append(f"# {text}")
        self._content.append("")
        return self

    def add_section(self, text: str) -> "MarkdownBuilder":
        """Add a section header."""
        self._content.append(f"## {text}")
        self._content.append("")
        return self

    def add_text(self, text: str) -> "MarkdownBuilder":
        self._content.append(text)
        self._content.append("")
        return self

    def add_bold_text(self, label: str, value: Any = "") -> "MarkdownBuilder":
        """Add ``**label** value``; the value goes through ``fmt``."""
        if value != "":
            self._content.append(f"**{label}** {fmt(value)}")
        else:
            self._content.append(f"**{label}**")
        self._content.append("")
        return self

    def add_bullet(self, text: str) -> "MarkdownBuilder":
        self._content.append(f"- {text}")
        return self

    def add_table(
        self, headers: Sequence[str], rows: Sequence[Sequence[Any]]
    ) -> "MarkdownBuilder":
        """Add a pipe table; cells go through ``fmt``."""
        self._content.append("| " + " | ".join(headers) + " |")
        self._content.append("|" + "|".join("---" for _ in headers) + "|")
        for row in rows:
            self._content.append("| " + " | ".join(fmt(cell) for cell in row) + " |")
        self._content.append("")
        return self

    def add_empty_line(self) -> "MarkdownBuilder":
        self._content.append("")
        return self

    def build(self) -> str:
        """Build the final markdown string."""
        return "\n".join(self._content)
