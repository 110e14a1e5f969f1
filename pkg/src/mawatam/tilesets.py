"""Builtin tile sets, the tileset text format, and determinism probes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core.types import NULL_GLUE, TileSet, TileType
from .errors import DuplicateTileNameError, FormatError

NAND_NXOR_ID = "nand-nxor"
COLLATZ_ID = "collatz"
COLLATZ_EXT_ID = "collatz-ext"

# Trajectory-extension glue label: marks deleted binary positions.
S_GLUE = "S"


def _bit(value):
    return "1" if value else "0"


def nand_nxor() -> TileSet:
    """The 4-tile set: south = NAND(north, east), west = NXOR(north, east)."""
    tiles = []
    for n in (0, 1):
        for e in (0, 1):
            nand = 1 - (n & e)
            nxor = 1 - (n ^ e)
            tiles.append(
                TileType(f"{n}{e}", n=_bit(n), e=_bit(e), s=_bit(nand), w=_bit(nxor))
            )
    return TileSet(NAND_NXOR_ID, tiles)


def collatz(extended: bool = False) -> TileSet:
    """The 6-tile set named "0".."5" satisfying x = 3N + E = 2W + S.

    ``extended`` adds the two trajectory tiles that implement trailing-zero
    deletion and the (3x+1)/2 carry, enabling Collatz trajectory assembly
    from L-shaped seeds.  Their glue tuples are fixed empirically against
    the big-integer trajectory oracle (see tests/test_arithmetic.py).
    """
    tiles = [
        TileType(str(x), n=str(x // 3), e=str(x % 3), w=str(x // 2), s=str(x % 2))
        for x in range(6)
    ]
    if extended:
        # "S0" consumes a trailing 0 (one halving) and propagates the S
        # marker west; "S1" consumes a trailing 1 and injects the ternary
        # carry 2, so the remaining bits compute (3x+1)/2.
        tiles.append(TileType("S0", n="0", e=S_GLUE, w=S_GLUE, s="0"))
        tiles.append(TileType("S1", n="1", e=S_GLUE, w="2", s="0"))
    return TileSet(COLLATZ_EXT_ID if extended else COLLATZ_ID, tiles)


def builtin_tileset(tileset_id: str) -> TileSet:
    if tileset_id == NAND_NXOR_ID:
        return nand_nxor()
    if tileset_id == COLLATZ_ID:
        return collatz()
    if tileset_id == COLLATZ_EXT_ID:
        return collatz(extended=True)
    raise KeyError(f"unknown builtin tile set {tileset_id!r}")


PROBE_CORNERS = (("N", "E"), ("S", "E"), ("S", "W"))


@dataclass(frozen=True)
class SidePairProbe:
    """Two glue values presented on a fixed pair of sides."""

    pair: tuple  # one of PROBE_CORNERS
    values: tuple  # two glue labels

    def __post_init__(self):
        if tuple(self.pair) not in PROBE_CORNERS:
            raise ValueError(f"probe pair must be one of {PROBE_CORNERS}")


@dataclass(frozen=True)
class ProbeResult:
    tile: Optional[TileType]
    violation: bool  # True when >= 2 tiles matched the probe


def unique_tile_for(tileset: TileSet, probe: SidePairProbe) -> ProbeResult:
    """The unique tile carrying the probe's glues on the probed corner.

    Returns tile=None when no tile matches; a determinism violation is
    flagged when two or more match.
    """
    s1, s2 = probe.pair
    v1, v2 = probe.values
    hits = [t for t in tileset if t.glue(s1) == v1 and t.glue(s2) == v2]
    if len(hits) == 1:
        return ProbeResult(hits[0], False)
    return ProbeResult(None, len(hits) >= 2)


TILESET_HEADER = "mawatam-tileset v1"


def save_tileset(tileset: TileSet) -> str:
    lines = [TILESET_HEADER, f"name {tileset.name}"]
    for t in tileset:
        lines.append(f"tile {t.name} N={t.n} E={t.e} S={t.s} W={t.w}")
    return "\n".join(lines) + "\n"


def load_tileset(text: str) -> TileSet:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TILESET_HEADER:
        raise FormatError(f"expected header {TILESET_HEADER!r}", line=1)
    name = "tileset"
    tiles = []
    seen = set()
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "name":
            if len(parts) != 2:
                raise FormatError("name takes one token", line=ln)
            name = parts[1]
            continue
        if parts[0] != "tile":
            raise FormatError(f"unknown directive {parts[0]!r}", line=ln)
        if len(parts) != 6:
            raise FormatError("tile takes a name and four glue fields", line=ln)
        tname = parts[1]
        if tname in seen:
            raise DuplicateTileNameError(
                f"duplicate tile name {tname!r}", line=ln
            )
        seen.add(tname)
        glues = {}
        for field_ in parts[2:]:
            if "=" not in field_:
                raise FormatError(f"malformed glue field {field_!r}", line=ln)
            side, label = field_.split("=", 1)
            if side not in ("N", "E", "S", "W") or side in glues or not label:
                raise FormatError(f"malformed glue field {field_!r}", line=ln)
            glues[side] = label
        if len(glues) != 4:
            raise FormatError("tile needs all of N, E, S, W", line=ln)
        tiles.append(
            TileType(tname, n=glues["N"], e=glues["E"], s=glues["S"], w=glues["W"])
        )
    return TileSet(name, tiles)
