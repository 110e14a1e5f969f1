"""Line-oriented text formats for mazes and assemblies."""

from __future__ import annotations

from .core.types import Assembly, EdgeSite, Maze, MazeBuilder
from .errors import FormatError

MAZE_HEADER = "mawatam-maze v1"
ASSEMBLY_HEADER = "mawatam-assembly v1"

_SIDES = ("N", "E", "S", "W")


def save_maze(maze: Maze) -> str:
    lines = [MAZE_HEADER]
    for x, y in sorted(maze.cells):
        lines.append(f"cell {x} {y}")
    for (x, y, side) in sorted(maze.glues):
        lines.append(f"glue {x} {y} {side} {maze.glues[(x, y, side)]}")
    for x, y in maze.input_sites:
        lines.append(f"input {x} {y}")
    if maze.output_edge is not None:
        o = maze.output_edge
        lines.append(f"output {o.x} {o.y} {o.side}")
    return "\n".join(lines) + "\n"


def _int_pair(parts, ln):
    try:
        return int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise FormatError("expected integer coordinates", line=ln)


def load_maze(text: str) -> Maze:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAZE_HEADER:
        raise FormatError(f"expected header {MAZE_HEADER!r}", line=1)
    builder = MazeBuilder()
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "cell":
            x, y = _int_pair(parts[1:3], ln)
            builder.ensure_cell(x, y)
        elif kind == "glue":
            if len(parts) != 5 or parts[3] not in _SIDES:
                raise FormatError("glue takes x y side label", line=ln)
            x, y = _int_pair(parts[1:3], ln)
            builder.add_glue(x, y, parts[3], parts[4])
        elif kind == "input":
            x, y = _int_pair(parts[1:3], ln)
            builder.input_sites.append((x, y))
        elif kind == "output":
            if len(parts) != 4 or parts[3] not in _SIDES:
                raise FormatError("output takes x y side", line=ln)
            x, y = _int_pair(parts[1:3], ln)
            builder.output_edge = EdgeSite(x, y, parts[3])
        else:
            raise FormatError(f"unknown directive {kind!r}", line=ln)
    return builder.build()


def save_assembly(assembly: Assembly) -> str:
    lines = [ASSEMBLY_HEADER]
    for (x, y), name in assembly.trace:
        lines.append(f"tile {x} {y} {name}")
    maze = assembly.maze
    for (x, y, side) in sorted(maze.glues):
        lines.append(f"glue {x} {y} {side} {maze.glues[(x, y, side)]}")
    glue_cells = {(x, y) for (x, y, _s) in maze.glues}
    for x, y in sorted(maze.cells - glue_cells):
        lines.append(f"cell {x} {y}")
    for x, y in maze.input_sites:
        lines.append(f"input {x} {y}")
    if maze.output_edge is not None:
        o = maze.output_edge
        lines.append(f"output {o.x} {o.y} {o.side}")
    return "\n".join(lines) + "\n"


def load_assembly(text: str) -> Assembly:
    lines = text.splitlines()
    if not lines or lines[0].strip() != ASSEMBLY_HEADER:
        raise FormatError(f"expected header {ASSEMBLY_HEADER!r}", line=1)
    builder = MazeBuilder()
    trace = []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "tile":
            if len(parts) != 4:
                raise FormatError("tile takes x y name", line=ln)
            x, y = _int_pair(parts[1:3], ln)
            trace.append(((x, y), parts[3]))
        elif kind == "glue":
            if len(parts) != 5 or parts[3] not in _SIDES:
                raise FormatError("glue takes x y side label", line=ln)
            x, y = _int_pair(parts[1:3], ln)
            builder.add_glue(x, y, parts[3], parts[4])
        elif kind == "cell":
            x, y = _int_pair(parts[1:3], ln)
            builder.ensure_cell(x, y)
        elif kind == "input":
            x, y = _int_pair(parts[1:3], ln)
            builder.input_sites.append((x, y))
        elif kind == "output":
            if len(parts) != 4 or parts[3] not in _SIDES:
                raise FormatError("output takes x y side", line=ln)
            x, y = _int_pair(parts[1:3], ln)
            builder.output_edge = EdgeSite(x, y, parts[3])
        else:
            raise FormatError(f"unknown directive {kind!r}", line=ln)
    placed = {}
    for pos, name in trace:
        placed[pos] = name
    return Assembly(builder.build(), placed, tuple(trace))
