"""Compiler backend: place gadgets on the grid and route the wires.

Layer i of the plan occupies a column band at decreasing x (inputs on
the east, output on the west).  Wires run west along rows and south
along allocated channel columns, with turn gadgets at the corners; every
route carries a polarity accumulator and is corrected to deliver the
plain signal at each in-port (a NOT cell for the NAND-NXOR set, a
negating turn or a buffer for the Collatz set).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .circuit import (
    CONST0,
    CONST1,
    CROSSOVER,
    FANOUT,
    INPUT,
    OUTPUT,
    TABLE,
    Circuit,
    LayeredPlan,
    layer as layer_plan,
    planarize,
)
from .core.engine import run_to_terminal
from .core.types import Assembly, EdgeSite, Maze, MazeBuilder, glue_at
from .errors import (
    LengthMismatchError,
    MawatamError,
    OutputNotReachedError,
    UnroutableError,
)
from .gadgets.library import GadgetLibrary, builtin_library
from .gadgets.model import Gadget, Port
from .tilesets import COLLATZ_ID, NAND_NXOR_ID, builtin_tileset

ROW_GAP = 6
CHANNEL_PITCH = 3
BAND_PAD = 10

INPUT_TILES = {
    NAND_NXOR_ID: {0: "10", 1: "11"},
    COLLATZ_ID: {0: "0", 1: "2"},
}

GLUE_TO_BIT = {"0": 0, "1": 1}


@dataclass
class Placement:
    gid: int
    role: str
    gadget: Optional[Gadget]  # None for input/output pseudo-gadgets
    offset: Tuple[int, int]
    out_edges: dict  # pin -> (x, y, side, axis)
    in_ports: list  # absolute Ports, pin order


@dataclass
class RoutedLayout:
    placements: Dict[int, Placement]
    wires: list  # (src edge, dst edge) per routed wire
    corrections: int
    builder: MazeBuilder
    accounting: dict
    input_sites: list
    output_edge: Optional[EdgeSite]


@dataclass(frozen=True)
class CompiledMaze:
    maze: Maze
    tileset_id: str
    input_sites: tuple
    output_edge: EdgeSite
    accounting: dict  # {"gates": {...}, "crossovers": {...}, "wire_tiles": n}


class _Space:
    """Hard-cell collision tracking (seeds, growth cells, dangle targets)."""

    def __init__(self):
        self.hard = set()

    def claim(self, cells, what):
        clash = self.hard & set(cells)
        if clash:
            raise UnroutableError(f"{what} collides at {sorted(clash)[:4]}")
        self.hard |= set(cells)


def _hard_cells(gadget: Gadget, dx, dy):
    cells = {(x + dx, y + dy) for x, y in gadget.maze.cells}
    cells |= {(x + dx, y + dy) for x, y in gadget.growth}
    return cells


def _piece_delta(gadget: Gadget) -> int:
    """Net polarity change across a 1-in 1-out piece."""
    inv = gadget.tables[0] == "10"
    neg = gadget.out_ports[0].polarity == "negated"
    return 1 if inv != neg else 0


class _Router:
    def __init__(self, plan: LayeredPlan, library: GadgetLibrary):
        self.plan = plan
        self.lib = library
        self.tileset_id = library.tileset_id
        self.h_flip = 1 if self.tileset_id == COLLATZ_ID else 0
        self.v_flip = 1 if self.tileset_id == NAND_NXOR_ID else 0
        self.circuit = plan.circuit
        self.builder = MazeBuilder()
        self.space = _Space()
        self.placements: Dict[int, Placement] = {}
        self.corrections = 0
        self.wires = []
        self.accounting = {"gates": {}, "crossovers": {}, "wire_tiles": 0}
        self.input_sites: Dict[int, Tuple[int, int]] = {}
        self.output_edge: Optional[EdgeSite] = None

    # -- gadget selection --------------------------------------------

    def _gadget_for(self, gid):
        g = self.circuit.gates[gid]
        if g.kind == INPUT:
            return ("input", None)
        if g.kind == OUTPUT:
            return ("output", None)
        if g.kind == CONST0:
            return ("const0", self.lib["const0"])
        if g.kind == CONST1:
            return ("const1", self.lib["const1"])
        if g.kind == FANOUT:
            return ("fanout", self.lib["fanout"])
        if g.kind == CROSSOVER:
            return ("crossover", self.lib["crossover"])
        if g.kind == TABLE and len(g.table) == 2:
            role = "not" if g.table == "10" else "id"
            return (role, self.lib[role])
        return (f"gate-{g.table}", self.lib.gate(g.table))

    # -- placement ----------------------------------------------------

    def place(self):
        layer_meta = []
        for layer in self.plan.layers:
            widths = [2]
            for gid in layer:
                _, gadget = self._gadget_for(gid)
                if gadget is None:
                    widths.append(2)
                    continue
                cells = gadget.footprint() | set(gadget.margin)
                xs = [c[0] for c in cells]
                widths.append(max(xs) - min(xs) + 1)
            n_pins = sum(self.circuit.gates[g].arity[0] for g in layer)
            layer_meta.append((max(widths), n_pins))
        self.layer_x = [0]
        for li in range(1, len(layer_meta)):
            width_prev, _ = layer_meta[li - 1]
            _, n_pins = layer_meta[li]
            self.layer_x.append(
                self.layer_x[li - 1]
                - width_prev
                - CHANNEL_PITCH * (n_pins + 1)
                - BAND_PAD
            )

        for li, layer in enumerate(self.plan.layers):
            cursor = 0
            x_band = self.layer_x[li]
            for gid in layer:
                role, gadget = self._gadget_for(gid)
                kind = self.circuit.gates[gid].kind
                sources = [
                    self.placements[w.src].out_edges[w.src_pin]
                    for w in self.circuit.preds(gid)
                ]
                if gadget is None:
                    if kind == INPUT:
                        y = cursor
                        site = (x_band, y)
                        self.space.claim(
                            {site, (x_band + 1, y), (x_band, y - 1),
                             (x_band, y + 1)},
                            "input site",
                        )
                        self.input_sites[gid] = site
                        self.placements[gid] = Placement(
                            gid, role, None, site,
                            {0: (x_band, y, "W", "h")}, [],
                        )
                    else:  # OUTPUT
                        y = cursor
                        if sources:
                            y = min(y, sources[0][1])
                        port = Port(x_band, y, "E", "in", "h")
                        self.space.claim({(x_band, y)}, "output cell")
                        self.placements[gid] = Placement(
                            gid, role, None, (x_band, y), {}, [port]
                        )
                        self.output_edge = EdgeSite(x_band + 1, y, "W")
                    cursor = min(cursor, y) - ROW_GAP
                    continue
                cells = gadget.footprint() | set(gadget.margin)
                xs = [c[0] for c in cells]
                ys = [c[1] for c in cells]
                bx1, by0, by1 = max(xs), min(ys), max(ys)
                offset_x = x_band - bx1
                offset_y = cursor - by1
                for port, src in zip(gadget.in_ports, sources):
                    # A vertical source turns west two rows down, so it
                    # behaves like a horizontal source from there.
                    eff_sy = src[1] - (0 if src[3] == "h" else 3)
                    if port.side == "N":
                        if src[3] == "v" and src[0] == port.x + offset_x:
                            head = 1  # straight vertical drop
                        else:
                            head = 6  # channel descent plus the jog
                    else:
                        head = 0
                    offset_y = min(offset_y, eff_sy - port.y - head)
                # A horizontal approach can match its source row exactly or
                # sit >= 2 rows below it; a gap of one has no turn shape.
                for _ in range(2 * len(sources) + 2):
                    bumped = False
                    for port, src in zip(gadget.in_ports, sources):
                        eff_sy = src[1] - (0 if src[3] == "h" else 3)
                        if port.side == "E" and offset_y + port.y == eff_sy - 1:
                            offset_y -= 1
                            bumped = True
                    if not bumped:
                        break
                self.space.claim(
                    _hard_cells(gadget, offset_x, offset_y), gadget.name
                )
                self.builder.merge(gadget.maze, offset_x, offset_y)
                out_edges = {
                    pin: (p.x + offset_x, p.y + offset_y, p.side, p.axis)
                    for pin, p in enumerate(gadget.out_ports)
                }
                in_abs = [
                    p.translate(offset_x, offset_y) for p in gadget.in_ports
                ]
                self.placements[gid] = Placement(
                    gid, role, gadget, (offset_x, offset_y), out_edges, in_abs
                )
                if kind == CROSSOVER:
                    self.accounting["crossovers"][gid] = gadget.tile_count
                elif kind == TABLE and len(self.circuit.gates[gid].table) == 4:
                    self.accounting["gates"][gid] = gadget.tile_count
                cursor = offset_y + by0 - ROW_GAP

    # -- routing --------------------------------------------------------

    def route_all(self):
        chan_next = {}
        for li in range(1, len(self.plan.layers)):
            chan_next[li] = 0
        for li in range(1, len(self.plan.layers)):
            chan_base = self.layer_x[li] + BAND_PAD // 2
            for gid in self.plan.layers[li]:
                for w in self.circuit.preds(gid):
                    src = self.placements[w.src].out_edges[w.src_pin]
                    port = self.placements[gid].in_ports[w.dst_pin]
                    chan = chan_base + CHANNEL_PITCH * chan_next[li]
                    chan_next[li] += 1
                    self._route_wire(src, port, chan)

    def _plan(self, src, dst_port: Port, chan_x):
        """Geometric plan: list of ("h", span) / ("v", span) / (role,).

        Spans follow the cursor model: an h-run of span k moves the
        presenting edge k cells west; a v-run k cells south.  turn-ws
        consumes the edge at its in-port (in_x cells west of its descent
        column) and re-presents one row below the turn; turn-sw eats a
        southward edge at row r+1 and re-presents westward at row r.
        """
        sx, sy, _side, s_axis = src
        ws_in = 1 + self.lib["turn-ws"].in_ports[0].x  # edge-to-column gap
        ops = []
        if s_axis == "v":
            # Leave the source band right away: two cells down, turn west
            # (depth two keeps the turn's stopper clear of the source
            # gadget's own protective cells).
            if dst_port.side == "N" and sx == dst_port.x:
                ops.append(("v", sy - (dst_port.y + 1)))
                return ops
            ops.append(("v", 2))
            ops.append(("turn-sw",))
            sx, sy = sx, sy - 3
        if dst_port.side == "E":
            dx, dy = dst_port.x, dst_port.y
            if sy == dy:
                if sx - dx - 1 < 0:
                    raise UnroutableError("destination east of source")
                ops.append(("h", sx - dx - 1))
                return ops
            if sy < dy + 2:
                raise UnroutableError("route would run north")
            ops.append(("h", sx - chan_x - ws_in))
            ops.append(("turn-ws",))  # presents at (chan_x, sy-1, S)
            ops.append(("v", (sy - 1) - (dy + 1)))
            ops.append(("turn-sw",))  # presents at (chan_x, dy, W)
            ops.append(("h", chan_x - dx - 1))
            return ops
        # North-facing destination port at (px, py): descend in the
        # channel, jog west just above the gadget, finish with a short
        # owned descent into the port.
        px, py = dst_port.x, dst_port.y
        jy = py + 4
        if sy < jy + 2:
            raise UnroutableError("no headroom for the jog")
        ops.append(("h", sx - chan_x - ws_in))
        ops.append(("turn-ws",))  # presents at (chan_x, sy-1, S)
        ops.append(("v", (sy - 1) - (jy + 1)))
        ops.append(("turn-sw",))  # presents at (chan_x, jy, W)
        ops.append(("h", chan_x - px - ws_in))
        ops.append(("turn-ws",))  # presents at (px, jy-1, S)
        ops.append(("v", (jy - 1) - (py + 1)))
        return ops

    def _route_wire(self, src, dst_port: Port, chan_x):
        ops = self._plan(src, dst_port, chan_x)
        for op in ops:
            if op[0] in ("h", "v") and op[1] < 0:
                raise UnroutableError(f"negative {op[0]} span {op[1]}")
        pol = 0
        for op in ops:
            if op[0] == "h":
                pol += self.h_flip * op[1]
            elif op[0] == "v":
                pol += self.v_flip * op[1]
            else:
                pol += _piece_delta(self.lib[op[0]])
        pol = (pol + (1 if dst_port.polarity == "negated" else 0)) % 2
        if pol:
            self.corrections += 1
            ops = self._insert_correction(ops)
        self._emit(src, ops, dst_port)

    def _insert_correction(self, ops):
        if self.tileset_id == COLLATZ_ID:
            for i, op in enumerate(ops):
                if op[0] == "turn-ws":
                    return ops[:i] + [("turn-ws-neg",)] + ops[i + 1:]
            for i in reversed(range(len(ops))):
                if ops[i][0] == "h" and ops[i][1] >= 3:
                    return ops[:i] + [
                        ("h", ops[i][1] - 3),
                        ("buffer",),
                    ] + ops[i + 1:]
        else:
            for i in reversed(range(len(ops))):
                if ops[i][0] == "h" and ops[i][1] >= 1:
                    return ops[:i] + [
                        ("h", ops[i][1] - 1),
                        ("not",),
                    ] + ops[i + 1:]
        raise UnroutableError("no room for a polarity correction")

    def _emit(self, src, ops, dst_port: Port):
        x, y, side, axis = src
        for op in ops:
            if op[0] == "h":
                span = op[1]
                if span:
                    wire = self.lib.hwire(span)
                    ox = x - 1  # first wire cell west of the cursor edge
                    self.space.claim(
                        _hard_cells(wire, ox, y)
                        | {(ox - i, y) for i in range(span)},
                        "hwire",
                    )
                    self.builder.merge(wire.maze, ox, y)
                    self.accounting["wire_tiles"] += span
                    x -= span
            elif op[0] == "v":
                span = op[1]
                if span:
                    wire = self.lib.vwire(span)
                    oy = y - 1
                    self.space.claim(
                        _hard_cells(wire, x, oy)
                        | {(x, oy - i) for i in range(span)},
                        "vwire",
                    )
                    self.builder.merge(wire.maze, x, oy)
                    self.accounting["wire_tiles"] += span
                    y -= span
            else:
                piece = self.lib[op[0]]
                in_port = piece.in_ports[0]
                if in_port.side == "E":
                    ox = x - 1 - in_port.x
                    oy = y - in_port.y
                else:
                    ox = x - in_port.x
                    oy = y - 1 - in_port.y
                self.space.claim(_hard_cells(piece, ox, oy), op[0])
                self.builder.merge(piece.maze, ox, oy)
                self.accounting["wire_tiles"] += piece.tile_count
                out = piece.out_ports[0]
                x, y = out.x + ox, out.y + oy
                side, axis = out.side, out.axis
        # The cursor edge must now coincide with the destination port edge.
        cur = EdgeSite(x, y, side).canonical()
        want = EdgeSite(dst_port.x, dst_port.y, dst_port.side).canonical()
        if cur != want:
            raise UnroutableError(
                f"route ended at {cur}, port expects {want}"
            )
        self.wires.append((src, (dst_port.x, dst_port.y, dst_port.side)))

    def finish(self) -> RoutedLayout:
        return RoutedLayout(
            placements=self.placements,
            wires=self.wires,
            corrections=self.corrections,
            builder=self.builder,
            accounting=self.accounting,
            input_sites=[self.input_sites[g] for g in self.circuit.inputs],
            output_edge=self.output_edge,
        )


def route(plan: LayeredPlan, library: GadgetLibrary) -> RoutedLayout:
    """Place every gadget and realize every wire with correct parity."""
    router = _Router(plan, library)
    router.place()
    router.route_all()
    return router.finish()


def compile_circuit(
    circuit: Circuit, tileset_id: str, library: Optional[GadgetLibrary] = None
) -> CompiledMaze:
    """planarize -> layer -> route -> emit a runnable maze."""
    lib = library or builtin_library(tileset_id)
    plan = layer_plan(planarize(circuit))
    routed = route(plan, lib)
    builder = routed.builder
    builder.input_sites = list(routed.input_sites)
    builder.output_edge = routed.output_edge
    maze = builder.build()
    return CompiledMaze(
        maze=maze,
        tileset_id=tileset_id,
        input_sites=tuple(routed.input_sites),
        output_edge=routed.output_edge,
        accounting=routed.accounting,
    )


def encode_input(compiled: CompiledMaze, bits) -> Maze:
    """Place one bit-encoding seed tile at each input site."""
    if len(bits) != len(compiled.input_sites):
        raise LengthMismatchError(
            f"expected {len(compiled.input_sites)} bits, got {len(bits)}"
        )
    tileset = builtin_tileset(compiled.tileset_id)
    names = INPUT_TILES[compiled.tileset_id]
    maze = compiled.maze
    for site, bit in zip(compiled.input_sites, bits):
        maze = maze.with_seed_tile(site, tileset[names[int(bit)]])
    return maze


def read_output(terminal: Assembly, compiled: CompiledMaze) -> int:
    """Decode the bit at the compiled maze's output edge."""
    tileset = builtin_tileset(compiled.tileset_id)
    label = glue_at(terminal, compiled.output_edge, tileset)
    if label == "-":
        raise OutputNotReachedError("no glue at the output edge")
    if label not in GLUE_TO_BIT:
        raise MawatamError(f"output glue {label!r} is not a bit")
    return GLUE_TO_BIT[label]


def run_compiled(
    compiled: CompiledMaze,
    bits,
    policy="raster",
    rng_seed=None,
    max_steps=10**6,
    strict=False,
):
    """encode_input + run_to_terminal + read_output in one call."""
    maze = encode_input(compiled, bits)
    tileset = builtin_tileset(compiled.tileset_id)
    terminal, report = run_to_terminal(
        Assembly(maze),
        tileset,
        policy=policy,
        rng_seed=rng_seed,
        max_steps=max_steps,
        strict=strict,
    )
    return read_output(terminal, compiled), terminal, report
