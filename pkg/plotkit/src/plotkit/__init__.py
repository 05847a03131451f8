"""Figure rendering for isacsim CSV output: curve overlays (analytic lines
over simulation markers), sweep lines and surfaces, and fading-fit
overlays."""
from .figures import FIGURE_KINDS, FigureSpec, MissingColumnsError, extract_series, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "MissingColumnsError",
    "extract_series",
    "render",
]
