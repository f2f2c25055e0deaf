"""Packing colorings of the integer distance graphs D(1, t)."""

__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: E402
from .graph import (  # noqa: E402
    DistanceSpec, distance, forbidden_offsets, grid_lower_bound, max_window_for_color,
    window_diameter,
)
from .pattern import (  # noqa: E402
    FiniteColoring, PeriodicColoring, Violation, read_pattern, verify_finite, verify_periodic,
    write_pattern,
)
from .search import SearchProblem, find_coloring, prove  # noqa: E402
from .density import combine, max_colorable  # noqa: E402
from .construct import assemble, path_band_pattern  # noqa: E402
from .anneal import AnnealConfig, energy  # noqa: E402
from .anneal import search as anneal  # noqa: E402
