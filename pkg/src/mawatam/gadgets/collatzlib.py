"""Gadget constructors for the 6-tile Collatz set.

Mechanics (tile named x, 0 <= x < 6, with x = 3N + E = 2W + S):
  - horizontal wires ride on a seed strip below presenting N="1" and
    attach by south+east; each cell negates the passing bit;
  - vertical wires read a seed column east presenting W="0" and attach by
    north+east; they transmit unchanged;
  - a west-to-south turn reads a seed glue above its corner; "1" makes
    the turn transmit, "0" makes it negate;
  - compute gates are rectangular seeds found by exhaustive search (see
    search.py); this module provides the hand-built plumbing.
"""

from __future__ import annotations

from ..core.types import MazeBuilder
from ..tilesets import COLLATZ_ID
from .model import IN, OUT, Gadget, Port


def _frag():
    return MazeBuilder()


def hwire(length: int) -> Gadget:
    """Westward wire; odd lengths negate (every second tile carries the
    complement)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    b = _frag()
    for i in range(length):
        b.add_glue(-i, -1, "N", "1")
    odd = length % 2 == 1
    ports = (
        Port(0, 0, "E", IN, "h"),
        Port(
            -(length - 1),
            0,
            "W",
            OUT,
            "h",
            polarity="negated" if odd else "plain",
            parity="odd" if odd else "even",
        ),
    )
    return Gadget(
        f"hwire{length}", COLLATZ_ID, b.build(), ports, ("01",), length
    )


def vwire(length: int) -> Gadget:
    """Southward wire; transmits unchanged for any length."""
    if length < 1:
        raise ValueError("length must be >= 1")
    b = _frag()
    for i in range(length):
        b.add_glue(1, -i, "W", "0")
    ports = (
        Port(0, 0, "N", IN, "v"),
        Port(0, -(length - 1), "S", OUT, "v", parity="even"),
    )
    return Gadget(
        f"vwire{length}", COLLATZ_ID, b.build(), ports, ("01",), length
    )


def turn_ws(negate: bool = False) -> Gadget:
    """West-to-south turn; the corner's seed glue picks transmit/negate.

    Owns one approach wire cell so the incoming strip can stop cleanly.
    """
    b = _frag()
    b.add_glue(1, -1, "N", "1")
    b.add_glue(1, -1, "W", "0")
    b.add_glue(0, 1, "S", "0" if negate else "1")
    ports = (
        Port(1, 0, "E", IN, "h"),
        Port(
            0,
            -1,
            "S",
            OUT,
            "v",
            polarity="negated" if negate else "plain",
        ),
    )
    name = "turn-ws-neg" if negate else "turn-ws"
    return Gadget(name, COLLATZ_ID, b.build(), ports, ("01",), 3)


def turn_sw() -> Gadget:
    """South-to-west turn with its growth stopper."""
    b = _frag()
    b.add_glue(1, 0, "W", "0")
    b.add_cell(-1, 1)  # stopper: blocks spurious north-west growth
    ports = (Port(0, 0, "N", IN, "v"), Port(0, 0, "W", OUT, "h"))
    return Gadget("turn-sw", COLLATZ_ID, b.build(), ports, ("01",), 1)


def fanout(odd: bool = False) -> Gadget:
    """West-to-south fanout.

    The even variant restores the westward bit over three normalizer
    cells; the odd variant stops one cell earlier and therefore negates
    the west-going signal (its west port is marked negated).
    """
    b = _frag()
    b.add_glue(1, -1, "N", "1")  # approach support
    b.add_glue(1, -1, "W", "0")  # descent support
    b.add_glue(0, 1, "S", "1")  # corner seed
    b.add_glue(-1, -1, "N", "1")  # normalizer 1
    b.add_glue(-2, -1, "N", "0")  # normalizer 2
    count = 5
    out_x = -2
    polarity = "negated"
    if not odd:
        b.add_glue(-3, -1, "N", "1")  # normalizer 3 restores the bit
        count = 6
        out_x = -3
        polarity = "plain"
    ports = (
        Port(1, 0, "E", IN, "h"),
        Port(out_x, 0, "W", OUT, "h", polarity=polarity),
        Port(0, -1, "S", OUT, "v"),
    )
    name = "fanout-odd" if odd else "fanout-even"
    return Gadget(name, COLLATZ_ID, b.build(), ports, ("01", "01"), count)


def buffer_() -> Gadget:
    """Phase shifter: identity over an odd span of three columns."""
    b = _frag()
    b.add_glue(0, 1, "S", "1")
    b.add_glue(-1, -1, "N", "1")
    b.add_glue(-2, -1, "N", "0")
    ports = (Port(0, 0, "E", IN, "h"), Port(-2, 0, "W", OUT, "h"))
    return Gadget("buffer", COLLATZ_ID, b.build(), ports, ("01",), 3)


def const(bit: int) -> Gadget:
    """Self-triggering L-seed emitting a constant westward."""
    b = _frag()
    b.add_glue(1, 0, "W", "2" if bit else "0")
    b.add_glue(0, 1, "S", "0")
    ports = (Port(0, 0, "W", OUT, "h"),)
    return Gadget(
        f"const{bit}", COLLATZ_ID, b.build(), ports, (str(bit),), 1
    )


def not_gadget() -> Gadget:
    """A single odd wire cell."""
    b = _frag()
    b.add_glue(0, -1, "N", "1")
    ports = (Port(0, 0, "E", IN, "h"), Port(0, 0, "W", OUT, "h"))
    return Gadget("not", COLLATZ_ID, b.build(), ports, ("10",), 1)


def id_gadget() -> Gadget:
    b = _frag()
    b.add_glue(0, -1, "N", "1")
    b.add_glue(-1, -1, "N", "1")
    ports = (Port(0, 0, "E", IN, "h"), Port(-1, 0, "W", OUT, "h"))
    return Gadget("id", COLLATZ_ID, b.build(), ports, ("01",), 2)


def crossover() -> Gadget:
    """33-tile crossover.

    The junction reads the north bit against a parity-preserving {0,2}
    recoding of the east bit, so the vertical line passes straight through
    (exiting at the same column).  The east bit is rebuilt west of the
    junction from the junction's mixed west glue and a dropped copy of
    the vertical bit, then jogged three rows south before exiting west.
    """
    b = _frag()
    # east input approach: 12 wire cells (even, so the junction sees the
    # true bit) riding their seed strip
    for x in range(2, 14):
        b.add_glue(x, -1, "N", "1")
    # recoder: maps the bit b to 2b on its west side
    b.add_glue(1, -1, "N", "0")
    b.add_glue(1, -1, "W", "0")  # also supports the south exit descent
    # north input approach: 10 transmitting cells
    for y in range(1, 11):
        b.add_glue(1, y, "W", "0")
    # junction grows at (0,0): x = 3v + 2u, south glue = v; the south exit
    # descends one owned cell at (0,-1) and leaves at the same column
    # drop of v onto column -1, one row above the junction
    b.add_glue(-1, 2, "S", "0")
    # mix at (-1,0) recovers u onto its south glue; its descent at
    # (-1,-1) would shed junk southward, so a stopper seals that column
    b.add_cell(-1, -2)  # stopper
    # normalizers: rebuild the bit from the mixed west glues
    b.add_glue(-2, 0, "S", "1")
    b.add_glue(-3, 0, "S", "0")
    # jog the recovered bit down to row -3
    b.add_glue(-2, -2, "W", "0")
    b.add_glue(-2, -3, "W", "0")
    b.add_glue(-4, -4, "N", "1")
    b.add_cell(-4, -2)  # stopper: the exit cell's north side effect
    ports = (
        Port(0, 10, "N", IN, "v"),
        Port(13, 0, "E", IN, "h"),
        Port(-4, -3, "W", OUT, "h"),
        Port(0, -1, "S", OUT, "v"),
    )
    return Gadget(
        "crossover",
        COLLATZ_ID,
        b.build(),
        ports,
        ("0101", "0011"),
        33,
    )
