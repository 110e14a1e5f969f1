"""Gadget constructors for the 4-tile NAND-NXOR set.

Mechanics (tile named by (north, east) bits; south = NAND, west = NXOR):
  - horizontal wire cell under a seed presenting S="1": transmits east
    glue to the west unchanged, advertises its negation southward;
  - a seed glue "0" above a wire cell negates the passing signal;
  - vertical wire cell beside a seed presenting W="1": flips per cell,
    advertising the running value westward;
  - all growth uses north+east attachments.
"""

from __future__ import annotations

from ..core.types import Maze, MazeBuilder
from ..tilesets import NAND_NXOR_ID
from .model import IN, OUT, Gadget, Port

NAND_TT = "1110"
NXOR_TT = "1001"


def _tt(core, pa, pb, po):
    bits = []
    for a in (0, 1):
        for b in (0, 1):
            x, y = a ^ pa, b ^ pb
            v = 1 - (x & y) if core == "nand" else 1 - (x ^ y)
            bits.append(str(v ^ po))
    return "".join(bits)


def _frag():
    return MazeBuilder()


def hwire(length: int) -> Gadget:
    """Westward wire: in on the east, out on the west, parity-free."""
    if length < 1:
        raise ValueError("length must be >= 1")
    b = _frag()
    margin = set()
    for i in range(length):
        b.add_glue(-i, 1, "S", "1")
        margin.add((-i, 0))
        margin.add((-i, -1))  # southward negation side effects
    ports = (
        Port(0, 0, "E", IN, "h"),
        Port(-(length - 1), 0, "W", OUT, "h", parity="even"),
    )
    return Gadget(
        name=f"hwire{length}",
        tileset_id=NAND_NXOR_ID,
        maze=b.build(),
        ports=ports,
        tables=("01",),
        tile_count=length,
        margin=frozenset(margin),
    )


def vwire(length: int) -> Gadget:
    """Southward wire: flips per cell, so odd lengths negate."""
    if length < 1:
        raise ValueError("length must be >= 1")
    b = _frag()
    margin = set()
    for i in range(length):
        b.add_glue(1, -i, "W", "1")
        margin.add((0, -i))
        margin.add((-1, -i))  # westward value side effects
    odd = length % 2 == 1
    ports = (
        Port(0, 0, "N", IN, "v"),
        Port(
            0,
            -(length - 1),
            "S",
            OUT,
            "v",
            polarity="negated" if odd else "plain",
            parity="odd" if odd else "even",
        ),
    )
    return Gadget(
        name=f"vwire{length}",
        tileset_id=NAND_NXOR_ID,
        maze=b.build(),
        ports=ports,
        tables=("01",),
        tile_count=length,
        margin=frozenset(margin),
    )


def turn_ws() -> Gadget:
    """West-to-south turn: two cells, net plain."""
    b = _frag()
    b.add_glue(0, 1, "S", "1")
    b.add_glue(1, -1, "W", "1")
    margin = {(0, 0), (0, -1), (-1, 0), (-1, -1)}
    ports = (Port(0, 0, "E", IN, "h"), Port(0, -1, "S", OUT, "v"))
    return Gadget(
        "turn-ws", NAND_NXOR_ID, b.build(), ports, ("01",), 2, frozenset(margin)
    )


def turn_sw() -> Gadget:
    """South-to-west turn: a single corner cell."""
    b = _frag()
    b.add_glue(1, 0, "W", "1")
    margin = {(0, 0), (0, -1)}
    ports = (Port(0, 0, "N", IN, "v"), Port(0, 0, "W", OUT, "h"))
    return Gadget(
        "turn-sw", NAND_NXOR_ID, b.build(), ports, ("01",), 1, frozenset(margin)
    )


def hnot() -> Gadget:
    """One-cell horizontal inverter (seed glue "0" above)."""
    b = _frag()
    b.add_glue(0, 1, "S", "0")
    margin = {(0, 0), (0, -1)}
    ports = (Port(0, 0, "E", IN, "h"), Port(0, 0, "W", OUT, "h"))
    return Gadget(
        "not", NAND_NXOR_ID, b.build(), ports, ("10",), 1, frozenset(margin)
    )


def hid() -> Gadget:
    b = _frag()
    b.add_glue(0, 1, "S", "1")
    margin = {(0, 0), (0, -1)}
    ports = (Port(0, 0, "E", IN, "h"), Port(0, 0, "W", OUT, "h"))
    return Gadget("id", NAND_NXOR_ID, b.build(), ports, ("01",), 1, frozenset(margin))


def const(bit: int) -> Gadget:
    """Self-triggering L-seed emitting a constant westward."""
    b = _frag()
    b.add_glue(0, 1, "S", "1")
    b.add_glue(1, 0, "W", str(bit))
    margin = {(0, 0), (0, -1)}
    ports = (Port(0, 0, "W", OUT, "h"),)
    return Gadget(
        f"const{bit}",
        NAND_NXOR_ID,
        b.build(),
        ports,
        (str(bit),),
        1,
        frozenset(margin),
    )


def fanout_ws() -> Gadget:
    """Fanout, west continuation plus a southward tap under the wire."""
    b = _frag()
    b.add_glue(0, 1, "S", "1")
    b.add_glue(1, -1, "W", "1")
    b.add_cell(-1, -1)  # blocker against the tap's westward side effect
    margin = {(0, 0), (0, -1), (-1, 0), (0, -2), (-1, -2)}
    ports = (
        Port(0, 0, "E", IN, "h"),
        Port(0, 0, "W", OUT, "h"),
        Port(0, -1, "S", OUT, "v"),
    )
    return Gadget(
        "fanout-ws",
        NAND_NXOR_ID,
        b.build(),
        ports,
        ("01", "01"),
        2,
        frozenset(margin),
    )


def fanout_sw() -> Gadget:
    """Fanout from a vertical wire: south continuation plus a west tap."""
    b = _frag()
    b.add_glue(1, 0, "W", "1")
    b.add_glue(1, -1, "W", "1")
    b.add_glue(-1, 1, "S", "1")
    b.add_cell(-1, -1)  # blocker
    margin = {(0, 0), (0, -1), (-1, 0), (-2, 0), (0, -2), (-1, -2)}
    ports = (
        Port(0, 0, "N", IN, "v"),
        Port(-1, 0, "W", OUT, "h"),
        Port(0, -1, "S", OUT, "v"),
    )
    return Gadget(
        "fanout-sw",
        NAND_NXOR_ID,
        b.build(),
        ports,
        ("01", "01"),
        3,
        frozenset(margin),
    )


def _core_gate(table: str) -> Gadget:
    """Two-input gate built around one NAND/NXOR tile placement.

    Input A descends into the core tile's north side (descent length sets
    its polarity for free); input B passes through an owned approach cell
    (identity or inverter) into the east side.  NAND-route outputs turn
    south-to-west below the core.
    """
    best = None
    for core in ("nxor", "nand"):
        for pa in (0, 1):
            for pb in (0, 1):
                for po in (0, 1):
                    if _tt(core, pa, pb, po) != table:
                        continue
                    da = 1 if pa else 2
                    count = da + 1 + 1
                    if core == "nand":
                        count += 1
                    if po:
                        count += 1
                    cand = (count, core, pa, pb, po, da)
                    if best is None or cand < best:
                        best = cand
    if best is None:
        return None
    count, core, pa, pb, po, da = best
    pad = table == "1000" and count < 6  # NOR is the documented 6-tile case
    if pad:
        count += 1
    b = _frag()
    margin = set()
    gy = -da
    for i in range(da):  # descent for input A
        b.add_glue(1, -i, "W", "1")
        margin.add((0, -i))
    b.add_glue(1, gy + 1, "S", "0" if pb else "1")  # B approach cell支seed
    margin.update({(1, gy), (0, gy), (-1, gy)})
    ports_in = (
        Port(0, 0, "N", IN, "v"),
        Port(1, gy, "E", IN, "h"),
    )
    if core == "nxor":
        out_x = 0
        if po:
            b.add_glue(-1, gy + 1, "S", "0")
            out_x = -1
            margin.add((-2, gy))
            margin.add((-1, gy - 1))
        out_port = Port(out_x, gy, "W", OUT, "h")
        margin.add((0, gy - 1))
    else:
        b.add_glue(1, gy - 1, "W", "1")  # south-to-west turn under the core
        margin.update({(0, gy - 1), (0, gy - 2), (-1, gy - 1)})
        out_x = 0
        if po:
            b.add_glue(-1, gy, "S", "0")
            out_x = -1
            margin.add((-1, gy - 2))
        if pad:
            b.add_glue(out_x - 1, gy, "S", "1")
            out_x -= 1
            margin.add((out_x, gy - 2))
        margin.add((out_x - 1, gy - 1))
        out_port = Port(out_x, gy - 1, "W", OUT, "h")
    return Gadget(
        f"gate-{table}",
        NAND_NXOR_ID,
        b.build(),
        ports_in + (out_port,),
        (table,),
        count,
        frozenset(margin),
    )


def _degenerate_gate(table: str) -> Gadget:
    """Tables ignoring an input: pass/invert one operand, dangle the other."""
    b = _frag()
    margin = set()
    ports = [Port(0, 0, "N", IN, "v")]
    if table in ("0101", "1010"):
        # value = f(b); input A dangles unconsumed.
        b.add_glue(-1, -3, "S", "1" if table == "0101" else "0")
        ports.append(Port(-1, -4, "E", IN, "h"))
        out = Port(-1, -4, "W", OUT, "h")
        count = 1
        margin.update({(0, 0), (-1, -4), (-2, -4), (-1, -5), (0, -4)})
    elif table in ("0011", "1100"):
        da = 2 if table == "0011" else 1
        for i in range(da):
            b.add_glue(1, -i, "W", "1")
            margin.add((0, -i))
        b.add_glue(1, -da, "W", "1")  # south-to-west turn
        margin.update({(0, -da), (0, -da - 1), (-1, -da)})
        ports.append(Port(0, -da - 3, "E", IN, "h"))  # B dangles
        margin.add((0, -da - 3))
        out = Port(0, -da, "W", OUT, "h")
        count = da + 1
    elif table in ("0000", "1111"):
        bit = table[0]
        b.add_glue(0, -2, "S", "1")
        b.add_glue(1, -3, "W", bit)
        ports.append(Port(0, -6, "E", IN, "h"))  # B dangles
        out = Port(0, -3, "W", OUT, "h")
        count = 1
        margin.update({(0, 0), (0, -3), (-1, -3), (0, -4), (0, -6)})
    else:
        return None
    return Gadget(
        f"gate-{table}",
        NAND_NXOR_ID,
        b.build(),
        tuple(ports) + (out,),
        (table,),
        count,
        frozenset(margin),
    )


def gate(table: str) -> Gadget:
    """Any of the 16 two-input truth tables."""
    if len(table) != 4 or set(table) - {"0", "1"}:
        raise ValueError(f"bad table {table!r}")
    g = _core_gate(table)
    if g is None:
        g = _degenerate_gate(table)
    if g is None:
        raise ValueError(f"no construction for table {table!r}")
    return g


def crossover() -> Gadget:
    """34-tile crossover built on the three-XOR idea: the junction tile
    computes the NXOR mix, and each output is recovered by NXOR-ing the
    mix against a fanned-out copy of the other input.

    The vertical line enters at (0, 6) and exits south at (-2, -7); the
    horizontal line enters at (6, 0) and exits west at (-3, 0) on its own
    row.  Tile count is input-independent: 34.
    """
    b = _frag()
    # vertical approach for the north input v (6 cells, even parity)
    for y in range(1, 7):
        b.add_glue(1, y, "W", "1")
    # horizontal approach for the east input u (6 cells)
    for x in range(1, 7):
        b.add_glue(x, 1, "S", "1")
    # junction at (0,0): N=v, E=u -> west glue c = NXOR(u, v)
    # c runs west over (-1,0), (-2,0):
    b.add_glue(-1, 1, "S", "1")
    b.add_glue(-2, 1, "S", "1")
    # c tap: (-1,-1) reads ~c from below the c-wire, descends to (-1,-3)
    b.add_glue(0, -1, "W", "1")
    b.add_glue(0, -2, "W", "1")
    b.add_glue(0, -3, "W", "1")
    b.add_cell(-2, -1)  # blocker: tap's west side effect meets the c-wire's
    # u copy: tap under the u approach at (2,-1), descend, turn west at -4
    b.add_glue(3, -1, "W", "1")
    b.add_cell(1, -1)  # blocker beside the u tap
    b.add_glue(3, -2, "W", "1")
    b.add_glue(3, -3, "W", "1")
    b.add_glue(3, -4, "W", "1")
    b.add_glue(1, -3, "S", "1")  # u runs west along row -4
    b.add_glue(0, -3, "S", "1")  # dual-purpose seed cell
    # v recovery at (-1,-4): N = c (descended), E = u copy -> west glue v
    # then turn it south: (-2,-4) under a "1" seed, descend to (-2,-7)
    b.add_glue(-2, -3, "S", "1")
    b.add_glue(-1, -5, "W", "1")
    b.add_glue(-1, -6, "W", "1")
    b.add_glue(-1, -7, "W", "1")
    # v copy: tap the vertical approach's west side effects at (-1,2),
    # run west, turn down at (-3,2) and descend into the u recovery
    b.add_glue(-1, 3, "S", "1")
    b.add_glue(-2, 3, "S", "1")
    b.add_glue(-3, 3, "S", "1")
    b.add_glue(-2, 1, "W", "1")
    # u recovery at (-3,0): N = v copy, E = c -> west glue u
    ports = (
        Port(0, 6, "N", IN, "v"),
        Port(6, 0, "E", IN, "h"),
        Port(-3, 0, "W", OUT, "h"),
        Port(-2, -7, "S", OUT, "v"),
    )
    return Gadget(
        "crossover",
        NAND_NXOR_ID,
        b.build(),
        ports,
        ("0101", "0011"),
        34,
    )
