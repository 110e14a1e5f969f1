"""Maze-walking tile self-assembly: simulator, circuit compiler, arithmetic."""

__version__ = "0.1.0"

from .core import (
    Assembly,
    EdgeSite,
    Maze,
    MazeBuilder,
    TileSet,
    TileType,
    attach,
    attachable_tiles,
    enumerate_terminals,
    frontier,
    glue_at,
    run_to_terminal,
)
from .tilesets import builtin_tileset, collatz, nand_nxor

__all__ = [
    "Assembly",
    "EdgeSite",
    "Maze",
    "MazeBuilder",
    "TileSet",
    "TileType",
    "attach",
    "attachable_tiles",
    "enumerate_terminals",
    "frontier",
    "glue_at",
    "run_to_terminal",
    "builtin_tileset",
    "collatz",
    "nand_nxor",
    "__version__",
]
