"""Figure rendering for diversinet sweep results."""

from .figures import METRICS, FigureSpec, PlotInputError, SchemeSeries, read_aggregate, render

__version__ = "0.1.0"
