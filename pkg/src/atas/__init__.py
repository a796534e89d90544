"""Active tile assembly: simulation, staged two-handed assembly, and
verification of a recursive L-shape (chair) tile-type corpus."""

from .assembler import BudgetExceeded, TileSystem, close_under_rotation, combine, run
from .assembly import (
    Assembly,
    binding_graph,
    canonical_key,
    is_theta_stable,
    min_cut_weight,
    normalize,
)
from .engine import apply_f, complete, modify_tile, potential
from .model import ActiveTile, Signal, TileSide, make_tile, rotate_ccw
from .tiletypes import LevelExpr, Subregions, TileTypeLibrary

__all__ = [
    "ActiveTile", "Assembly", "BudgetExceeded", "LevelExpr", "Signal",
    "Subregions", "TileSide", "TileSystem", "TileTypeLibrary", "apply_f",
    "binding_graph", "canonical_key", "close_under_rotation", "combine",
    "complete", "is_theta_stable", "make_tile", "min_cut_weight", "modify_tile",
    "normalize", "potential", "rotate_ccw", "run",
]

__version__ = "0.1.0"
