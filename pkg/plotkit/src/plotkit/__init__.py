"""plotkit: figure rendering for cohres sweep CSVs (no physics recomputed)."""

from .figures import FigureSpec, SchemaError, read_sweep, render

__version__ = "0.1.0"
