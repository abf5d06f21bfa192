"""Utility functions and helpers."""

from .formatting import ResultTable, metadata_line, render_csv, write_text

__all__ = [
    "ResultTable",
    "metadata_line",
    "render_csv",
    "write_text",
]
