"""Render delivery-time-versus-cache-size curves from sweep CSV files."""

from .core import EmptyInput, PlotSpec, SchemaError, load_curves, render

__version__ = "0.1.0"
