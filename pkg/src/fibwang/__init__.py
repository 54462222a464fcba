"""Signed Fibonacci numeration, automata and a self-similar 16-tile Wang set.

The position ``n`` of the fixed-point tiling holds the tile
``tile_at(n)``, computed by reading ``rep_f2(n)`` in a finite automaton.
"""

from .automata import fibonacci_letter_at, tile_at
from .morphisms import PHI, PHI_SEED
from .numeration import rep_f, rep_f2, val_f, val_f2
from .wang import tile_set_z

__all__ = [
    "PHI",
    "PHI_SEED",
    "fibonacci_letter_at",
    "rep_f",
    "rep_f2",
    "tile_at",
    "tile_set_z",
    "val_f",
    "val_f2",
]

__version__ = "0.1.0"
