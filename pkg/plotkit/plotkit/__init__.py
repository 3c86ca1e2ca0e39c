"""Offline figure rendering from simulator CSV output."""

from .render import (DYNRANGE_HEADER, ROC_HEADER, PlotSpec, SchemaError,
                     render, render_dynrange, render_roc, run)

__all__ = [
    "DYNRANGE_HEADER",
    "ROC_HEADER",
    "PlotSpec",
    "SchemaError",
    "render",
    "render_dynrange",
    "render_roc",
    "run",
]

__version__ = "0.1.0"
