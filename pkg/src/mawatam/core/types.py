"""Data model: glues, edges, tiles, mazes, assemblies.

Coordinates are integer (x, y) with x increasing eastward and y increasing
northward.  A glue is owned by a cell on one of its four sides; the edge
between (x, y) and (x, y+1) can therefore carry two glues, one presented
from below ((x, y, N)) and one from above ((x, y+1, S)).  A bond forms when
the two facing glues are equal and non-null.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..errors import (
    DuplicateTileNameError,
    FormatError,
    OverlapError,
)

NULL_GLUE = "-"

SIDES = ("N", "E", "S", "W")
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}
SIDE_DELTA = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}

Coord = tuple  # (x, y)


def neighbor(pos, side):
    dx, dy = SIDE_DELTA[side]
    return (pos[0] + dx, pos[1] + dy)


@dataclass(frozen=True, order=True)
class EdgeSite:
    """A unit edge named from one abutting cell: (cell, side)."""

    x: int
    y: int
    side: str

    def canonical(self):
        """Normalize so the same physical edge has one representative.

        (x, y, N) and (x, y+1, S) are the same edge; the canonical form
        keeps the S/W naming.
        """
        if self.side == "N":
            return EdgeSite(self.x, self.y + 1, "S")
        if self.side == "E":
            return EdgeSite(self.x + 1, self.y, "W")
        return self

    def flipped(self):
        """The same physical edge named from the other cell."""
        nx, ny = neighbor((self.x, self.y), self.side)
        return EdgeSite(nx, ny, OPPOSITE[self.side])

    @property
    def cell(self):
        return (self.x, self.y)

    def translate(self, dx, dy):
        return EdgeSite(self.x + dx, self.y + dy, self.side)


@dataclass(frozen=True)
class TileType:
    """Unit square with four glue labels."""

    name: str
    n: str = NULL_GLUE
    e: str = NULL_GLUE
    s: str = NULL_GLUE
    w: str = NULL_GLUE

    def glue(self, side):
        return {"N": self.n, "E": self.e, "S": self.s, "W": self.w}[side]

    @property
    def glues(self):
        return {"N": self.n, "E": self.e, "S": self.s, "W": self.w}


class TileSet:
    """Ordered, immutable collection of tile types with unique names."""

    def __init__(self, name, tiles: Iterable[TileType]):
        self.name = name
        self.tiles = tuple(tiles)
        self._by_name = {}
        seen_glues = {}
        for t in self.tiles:
            if t.name in self._by_name:
                raise DuplicateTileNameError(f"duplicate tile name {t.name!r}")
            self._by_name[t.name] = t
            key = (t.n, t.e, t.s, t.w)
            if key in seen_glues:
                raise FormatError(
                    f"tiles {seen_glues[key]!r} and {t.name!r} share all four glues"
                )
            seen_glues[key] = t.name

    def __iter__(self):
        return iter(self.tiles)

    def __len__(self):
        return len(self.tiles)

    def __getitem__(self, name) -> TileType:
        return self._by_name[name]

    def __contains__(self, name):
        return name in self._by_name

    def __eq__(self, other):
        return (
            isinstance(other, TileSet)
            and self.name == other.name
            and self.tiles == other.tiles
        )

    def __hash__(self):
        return hash((self.name, self.tiles))

    def glue_alphabet(self):
        labels = set()
        for t in self.tiles:
            labels.update((t.n, t.e, t.s, t.w))
        labels.discard(NULL_GLUE)
        return sorted(labels)

    def __repr__(self):
        return f"TileSet({self.name!r}, {len(self.tiles)} tiles)"


@dataclass(frozen=True)
class Maze:
    """Seed structure: occupied cells plus the glues they present.

    ``glues`` maps (x, y, side) -> label where (x, y) is the owning seed
    cell.  ``input_sites`` are empty coordinates awaiting input tiles and
    ``output_edge`` is where the computed bit is read.
    """

    cells: frozenset = frozenset()
    glues: Mapping = field(default_factory=dict)
    input_sites: tuple = ()
    output_edge: Optional[EdgeSite] = None

    def __post_init__(self):
        for (x, y, side), label in self.glues.items():
            if (x, y) not in self.cells:
                raise FormatError(f"glue on unoccupied cell ({x}, {y}, {side})")
            if label == NULL_GLUE:
                raise FormatError(f"explicit null glue at ({x}, {y}, {side})")
        for site in self.input_sites:
            if site in self.cells:
                raise FormatError(f"input site {site} is seed-occupied")
        if self.output_edge is not None:
            key = (self.output_edge.x, self.output_edge.y, self.output_edge.side)
            if key in self.glues:
                raise FormatError("output edge carries a seed glue")

    def glue_at(self, edge: EdgeSite):
        """Seed glue presented on this directed edge ('-' if none)."""
        return self.glues.get((edge.x, edge.y, edge.side), NULL_GLUE)

    def presented_into(self, pos, side):
        """Glue a neighbor presents into ``pos`` across ``side`` of pos."""
        nb = neighbor(pos, side)
        return self.glues.get((nb[0], nb[1], OPPOSITE[side]), NULL_GLUE)

    def bounding_box(self):
        """(xmin, ymin, xmax, ymax) over cells and input sites."""
        xs = [c[0] for c in self.cells] + [c[0] for c in self.input_sites]
        ys = [c[1] for c in self.cells] + [c[1] for c in self.input_sites]
        if self.output_edge is not None:
            xs.append(self.output_edge.x)
            ys.append(self.output_edge.y)
        if not xs:
            return (0, 0, -1, -1)
        return (min(xs), min(ys), max(xs), max(ys))

    def translate(self, dx, dy):
        return Maze(
            cells=frozenset((x + dx, y + dy) for x, y in self.cells),
            glues={(x + dx, y + dy, s): g for (x, y, s), g in self.glues.items()},
            input_sites=tuple((x + dx, y + dy) for x, y in self.input_sites),
            output_edge=(
                self.output_edge.translate(dx, dy) if self.output_edge else None
            ),
        )

    def merged(self, other: "Maze"):
        """Union of two fragments; colliding cells raise OverlapError."""
        clash = self.cells & other.cells
        if clash:
            raise OverlapError(f"fragments overlap at {sorted(clash)[:4]}")
        glues = dict(self.glues)
        for key, label in other.glues.items():
            if glues.get(key, label) != label:
                raise OverlapError(f"conflicting seed glues at {key}")
            glues[key] = label
        return Maze(
            cells=self.cells | other.cells,
            glues=glues,
            input_sites=self.input_sites + other.input_sites,
            output_edge=self.output_edge or other.output_edge,
        )

    def with_seed_tile(self, pos, tile: TileType):
        """Add ``tile`` to the seed at ``pos`` (the paper's input tiles)."""
        if pos in self.cells:
            raise OverlapError(f"cell {pos} already occupied")
        glues = dict(self.glues)
        for side in SIDES:
            g = tile.glue(side)
            if g != NULL_GLUE:
                glues[(pos[0], pos[1], side)] = g
        return Maze(
            cells=self.cells | {pos},
            glues=glues,
            input_sites=tuple(s for s in self.input_sites if s != pos),
            output_edge=self.output_edge,
        )


class MazeBuilder:
    """Mutable accumulator for mazes with collision checking."""

    def __init__(self):
        self.cells = set()
        self.glues = {}
        self.input_sites = []
        self.output_edge = None

    def add_cell(self, x, y):
        if (x, y) in self.cells:
            raise OverlapError(f"cell ({x}, {y}) added twice")
        self.cells.add((x, y))

    def ensure_cell(self, x, y):
        self.cells.add((x, y))

    def add_glue(self, x, y, side, label):
        if label == NULL_GLUE:
            return
        key = (x, y, side)
        if self.glues.get(key, label) != label:
            raise OverlapError(f"conflicting glues at {key}")
        self.glues[key] = label
        self.cells.add((x, y))

    def merge(self, maze: Maze, dx=0, dy=0):
        frag = maze.translate(dx, dy) if (dx or dy) else maze
        clash = self.cells & frag.cells
        if clash:
            raise OverlapError(f"fragments overlap at {sorted(clash)[:4]}")
        self.cells |= frag.cells
        for key, label in frag.glues.items():
            if self.glues.get(key, label) != label:
                raise OverlapError(f"conflicting seed glues at {key}")
            self.glues[key] = label
        self.input_sites.extend(frag.input_sites)
        if frag.output_edge is not None:
            self.output_edge = frag.output_edge

    def build(self):
        return Maze(
            cells=frozenset(self.cells),
            glues=dict(self.glues),
            input_sites=tuple(self.input_sites),
            output_edge=self.output_edge,
        )


@dataclass(frozen=True)
class Assembly:
    """A maze plus placed tiles, with the placement order retained."""

    maze: Maze
    placed: Mapping = field(default_factory=dict)  # (x, y) -> tile name
    trace: tuple = ()  # ((x, y), tile name) in placement order

    def occupied(self, pos):
        return pos in self.maze.cells or pos in self.placed

    def tile_at(self, pos, tileset: TileSet):
        name = self.placed.get(pos)
        return tileset[name] if name is not None else None

    def presented_into(self, pos, side, tileset: TileSet):
        """Glue presented into ``pos`` across ``side`` by tile or seed."""
        nb = neighbor(pos, side)
        name = self.placed.get(nb)
        if name is not None:
            return tileset[name].glue(OPPOSITE[side])
        return self.maze.presented_into(pos, side)

    def glue_view(self, tileset: TileSet):
        """Mapping (x, y, side) -> label over seed and placed-tile glues."""
        view = dict(self.maze.glues)
        for pos, name in self.placed.items():
            tile = tileset[name]
            for side in SIDES:
                g = tile.glue(side)
                if g != NULL_GLUE:
                    view[(pos[0], pos[1], side)] = g
        return view

    def with_tile(self, pos, tile: TileType):
        placed = dict(self.placed)
        placed[pos] = tile.name
        return Assembly(self.maze, placed, self.trace + ((pos, tile.name),))


def glue_at(assembly: Assembly, edge: EdgeSite, tileset: TileSet):
    """Glue readable at an edge: placed tile first, then seed, else null.

    Both cells abutting the edge are consulted; a placed tile's glue wins
    over a seed glue on the same physical edge.
    """
    for e in (edge, edge.flipped()):
        name = assembly.placed.get((e.x, e.y))
        if name is not None:
            g = tileset[name].glue(e.side)
            if g != NULL_GLUE:
                return g
    for e in (edge, edge.flipped()):
        g = assembly.maze.glue_at(e)
        if g != NULL_GLUE:
            return g
    return NULL_GLUE
