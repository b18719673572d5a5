"""Interwoven triangles on the ternary heptagrid.

Modules: ``euclid`` (row model), ``heptagrid`` (tile coordinates),
``seeds``, ``trilaterals`` (hyperbolic instances), ``mauve`` (mauve
triangles and the plane-filling path), ``ca`` and ``gf2`` (automata and
injectivity), ``render`` and ``cli``.
"""

from .heptagrid import CENTRAL, Cell, Region, format_cell, parse_cell

__all__ = ["CENTRAL", "Cell", "Region", "format_cell", "parse_cell"]
__version__ = "0.1.0"
