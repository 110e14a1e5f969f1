"""Gadget model: ports, validation, instantiation, and the gadget format.

A gadget is a maze fragment with typed ports.  In-ports name the edge of
the growth cell where the input glue arrives (side = where the glue comes
from); out-ports name the edge of the cell whose eventual tile presents
the output glue.  Adjacent gadgets compose by making an out-port edge and
an in-port edge coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..core.engine import enumerate_terminals, run_to_terminal
from ..core.types import (
    NULL_GLUE,
    Assembly,
    EdgeSite,
    Maze,
    TileSet,
    glue_at,
    neighbor,
)
from ..errors import FormatError, ValidationFailureError

IN = "in"
OUT = "out"


@dataclass(frozen=True)
class Port:
    x: int
    y: int
    side: str  # N/E/S/W: for in-ports, the side the glue arrives on
    direction: str  # "in" | "out"
    axis: str  # "h" (westward signal) | "v" (southward)
    polarity: str = "plain"  # physical glue = nominal ^ (polarity == "negated")
    parity: str = "none"  # even | odd | none, for wire-parity metadata

    @property
    def edge(self):
        return EdgeSite(self.x, self.y, self.side)

    @property
    def cell(self):
        return (self.x, self.y)

    def translate(self, dx, dy):
        return replace(self, x=self.x + dx, y=self.y + dy)


@dataclass(frozen=True)
class Gadget:
    """A validated seed fragment with ports and declared truth tables."""

    name: str
    tileset_id: str
    maze: Maze
    ports: tuple  # in-ports first (pin order), then out-ports
    tables: tuple  # one bit-string per out-port; 2^k bits for k in-ports
    tile_count: int
    margin: frozenset = frozenset()  # dangle-adjacent cells (soft)
    growth: frozenset = frozenset()  # cells tiles occupy on some input (hard)

    @property
    def in_ports(self):
        return tuple(p for p in self.ports if p.direction == IN)

    @property
    def out_ports(self):
        return tuple(p for p in self.ports if p.direction == OUT)

    def translated(self, dx, dy):
        return replace(
            self,
            maze=self.maze.translate(dx, dy),
            ports=tuple(p.translate(dx, dy) for p in self.ports),
            margin=frozenset((x + dx, y + dy) for x, y in self.margin),
            growth=frozenset((x + dx, y + dy) for x, y in self.growth),
        )

    def footprint(self):
        """Cells this gadget reserves: seeds, growth, stubs and margins."""
        cells = set(self.maze.cells) | set(self.margin) | set(self.growth)
        for p in self.in_ports:
            cells.add(p.cell)
            cells.add(neighbor(p.cell, p.side))
        for p in self.out_ports:
            cells.add(p.cell)
        return cells


def instantiate(gadget: Gadget, offset) -> Maze:
    """Translated copy of the gadget's maze fragment."""
    return gadget.maze.translate(offset[0], offset[1])


def input_stub(port: Port, bit: int) -> Maze:
    """1x1 seed presenting the bit glue into an in-port (for validation)."""
    sx, sy = neighbor(port.cell, port.side)
    facing = {"N": "S", "S": "N", "E": "W", "W": "E"}[port.side]
    label = str(bit ^ (1 if port.polarity == "negated" else 0))
    return Maze(cells=frozenset({(sx, sy)}), glues={(sx, sy, facing): label})


@dataclass
class InputTrial:
    bits: tuple
    ok: bool
    placed: int
    outputs: tuple  # observed out-port glues
    expected: tuple
    nondet_pos: Optional[tuple]
    mismatches: tuple
    problem: Optional[str] = None


@dataclass
class ValidationReport:
    gadget: str
    ok: bool
    trials: list = field(default_factory=list)
    tile_count: int = 0

    def failures(self):
        return [t for t in self.trials if not t.ok]


def validate_gadget(
    gadget: Gadget,
    tileset: TileSet,
    raise_on_failure: bool = True,
    check_orders: int = 0,
    exhaustive_limit: int = 0,
) -> ValidationReport:
    """Exhaustively simulate every input assignment of a gadget.

    For each combination: growth must be directed (no position ever admits
    two tile types), mismatch-free, stay within the footprint, place the
    declared number of tiles, and present table-conformant glues at every
    out-port.  ``check_orders`` additionally replays each input under that
    many random attachment orders; ``exhaustive_limit`` > 0 explores the
    full order space when at most that many tiles are placed.
    """
    if tileset.name != gadget.tileset_id:
        raise ValidationFailureError(
            f"gadget {gadget.name} targets {gadget.tileset_id}, got {tileset.name}"
        )
    k = len(gadget.in_ports)
    n_out = len(gadget.out_ports)
    if len(gadget.tables) != n_out or any(len(t) != 2**k for t in gadget.tables):
        raise ValidationFailureError(
            f"gadget {gadget.name}: tables must be {n_out} strings of {2 ** k} bits"
        )
    report = ValidationReport(gadget=gadget.name, ok=True, tile_count=gadget.tile_count)
    footprint = gadget.footprint()
    for combo in range(2**k):
        bits = tuple((combo >> (k - 1 - i)) & 1 for i in range(k))
        maze = gadget.maze
        for port, bit in zip(gadget.in_ports, bits):
            maze = maze.merged(input_stub(port, bit))
        terminal, run = run_to_terminal(Assembly(maze), tileset)
        expected = tuple(
            str(int(table[combo]) ^ (1 if port.polarity == "negated" else 0))
            for table, port in zip(gadget.tables, gadget.out_ports)
        )
        observed = tuple(
            glue_at(terminal, p.edge, tileset) for p in gadget.out_ports
        )
        problem = None
        if run.nondeterministic:
            problem = f"nondeterministic at {run.nondet_pos}"
        elif run.mismatches:
            problem = f"glue mismatch at {run.mismatches[0]}"
        elif observed != expected:
            problem = f"outputs {observed} != expected {expected}"
        elif len(terminal.placed) > gadget.tile_count:
            problem = f"placed {len(terminal.placed)} > declared {gadget.tile_count}"
        elif len(terminal.placed) < gadget.tile_count:
            problem = f"placed {len(terminal.placed)} < declared {gadget.tile_count}"
        elif gadget.margin:
            # margins are filled in by finalize(); only then is the
            # footprint contract checkable
            stray = [p for p in terminal.placed if p not in footprint]
            if stray:
                problem = f"tiles outside footprint: {stray[:3]}"
        baseline = frozenset(terminal.placed.items())
        if problem is None and check_orders:
            for seed in range(check_orders):
                alt, alt_run = run_to_terminal(
                    Assembly(maze), tileset, policy="random", rng_seed=seed + 1
                )
                if alt_run.nondeterministic:
                    problem = f"nondeterministic under order seed {seed + 1}"
                    break
                if frozenset(alt.placed.items()) != baseline:
                    problem = f"order seed {seed + 1} reached a different terminal"
                    break
        if (
            problem is None
            and exhaustive_limit
            and len(terminal.placed) <= exhaustive_limit
        ):
            terminals = enumerate_terminals(Assembly(maze), tileset)
            if len(terminals) != 1 or baseline not in terminals:
                problem = f"{len(terminals)} terminal assemblies under full order space"
        trial = InputTrial(
            bits=bits,
            ok=problem is None,
            placed=len(terminal.placed),
            outputs=observed,
            expected=expected,
            nondet_pos=run.nondet_pos,
            mismatches=run.mismatches,
            problem=problem,
        )
        report.trials.append(trial)
        if problem is not None:
            report.ok = False
            if raise_on_failure:
                raise ValidationFailureError(
                    f"gadget {gadget.name}, input {''.join(map(str, bits))}: {problem}",
                    assignment=bits,
                )
    return report


def finalize(gadget: Gadget, tileset: TileSet) -> Gadget:
    """Validate and widen the margin to every glue-adjacent empty cell.

    Runs all input combinations; the resulting footprint covers seed
    cells, grown tiles, stubs, and every empty cell a dangling glue faces,
    so composing gadgets cannot interact through leftover side effects.
    """
    k = len(gadget.in_ports)
    margin = set(gadget.margin)
    growth = set(gadget.growth)
    for combo in range(2**k):
        bits = tuple((combo >> (k - 1 - i)) & 1 for i in range(k))
        maze = gadget.maze
        for port, bit in zip(gadget.in_ports, bits):
            maze = maze.merged(input_stub(port, bit))
        terminal, run = run_to_terminal(Assembly(maze), tileset)
        if run.nondeterministic:
            raise ValidationFailureError(
                f"gadget {gadget.name}: nondeterministic at {run.nondet_pos}",
                assignment=bits,
            )
        growth |= set(terminal.placed)
        view = terminal.glue_view(tileset)
        for (x, y, side) in view:
            nb = neighbor((x, y), side)
            if nb not in terminal.maze.cells and nb not in terminal.placed:
                margin.add(nb)
    margin -= set(gadget.maze.cells)
    margin -= growth
    return replace(gadget, margin=frozenset(margin), growth=frozenset(growth))


GADGET_HEADER = "mawatam-gadget v1"


def save_gadget(gadget: Gadget) -> str:
    lines = [GADGET_HEADER, f"name {gadget.name}", f"tileset {gadget.tileset_id}"]
    for x, y in sorted(gadget.maze.cells):
        lines.append(f"cell {x} {y}")
    for (x, y, side) in sorted(gadget.maze.glues):
        lines.append(f"glue {x} {y} {side} {gadget.maze.glues[(x, y, side)]}")
    for p in gadget.ports:
        pol = "neg" if p.polarity == "negated" else "plain"
        lines.append(
            f"port {p.x} {p.y} {p.side} {p.direction} {p.axis} {pol} {p.parity}"
        )
    for table in gadget.tables:
        lines.append(f"truth {table}")
    lines.append(f"tiles {gadget.tile_count}")
    for x, y in sorted(gadget.margin):
        lines.append(f"margin {x} {y}")
    return "\n".join(lines) + "\n"


def load_gadget(text: str) -> Gadget:
    lines = text.splitlines()
    if not lines or lines[0].strip() != GADGET_HEADER:
        raise FormatError(f"expected header {GADGET_HEADER!r}", line=1)
    name = "gadget"
    tileset_id = None
    cells = set()
    glues = {}
    ports = []
    tables = []
    tiles = 0
    margin = set()
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "name":
                name = parts[1]
            elif kind == "tileset":
                tileset_id = parts[1]
            elif kind == "cell":
                cells.add((int(parts[1]), int(parts[2])))
            elif kind == "glue":
                glues[(int(parts[1]), int(parts[2]), parts[3])] = parts[4]
                cells.add((int(parts[1]), int(parts[2])))
            elif kind == "port":
                if parts[4] not in (IN, OUT) or parts[5] not in ("h", "v"):
                    raise FormatError("malformed port", line=ln)
                ports.append(
                    Port(
                        int(parts[1]),
                        int(parts[2]),
                        parts[3],
                        parts[4],
                        parts[5],
                        "negated" if parts[6] == "neg" else "plain",
                        parts[7],
                    )
                )
            elif kind == "truth":
                tables.append(parts[1])
            elif kind == "tiles":
                tiles = int(parts[1])
            elif kind == "margin":
                margin.add((int(parts[1]), int(parts[2])))
            else:
                raise FormatError(f"unknown directive {kind!r}", line=ln)
        except (IndexError, ValueError) as exc:
            raise FormatError(f"malformed {kind} line: {exc}", line=ln)
    if tileset_id is None:
        raise FormatError("missing tileset line")
    maze = Maze(cells=frozenset(cells), glues=glues)
    return Gadget(
        name=name,
        tileset_id=tileset_id,
        maze=maze,
        ports=tuple(ports),
        tables=tuple(tables),
        tile_count=tiles,
        margin=frozenset(margin),
    )
