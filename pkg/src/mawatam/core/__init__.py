"""Assembly engine core: data model and cooperative attachment."""

from .types import (
    NULL_GLUE,
    SIDES,
    Assembly,
    EdgeSite,
    Maze,
    MazeBuilder,
    TileSet,
    TileType,
    glue_at,
    neighbor,
)
from .engine import (
    DEFAULT_STEP_BUDGET,
    KERNEL_IMPL,
    RunReport,
    attach,
    attachable_tiles,
    enumerate_terminals,
    frontier,
    run_to_terminal,
)

__all__ = [
    "NULL_GLUE",
    "SIDES",
    "Assembly",
    "EdgeSite",
    "Maze",
    "MazeBuilder",
    "TileSet",
    "TileType",
    "glue_at",
    "neighbor",
    "DEFAULT_STEP_BUDGET",
    "KERNEL_IMPL",
    "RunReport",
    "attach",
    "attachable_tiles",
    "enumerate_terminals",
    "frontier",
    "run_to_terminal",
]
