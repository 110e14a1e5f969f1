"""Brute-force search for rectangular Collatz gate seeds.

Port convention (the paper's): both inputs arrive from the east, one
vertical block (two rows) apart; the output leaves westward.  A candidate
seed is a 1-wide rectangle strip between the input rows plus a support
strip under the lower input and one or two west combine columns:

      a ->  . . . .           row 0   (wire riding the strip)
            R R R R W         row -1  (strip: programmable north glues)
      b ->  . . . .           row -2  (wire riding the lower strip)
            S S S S           row -3  (strip: programmable north glues)

The wires transduce the bits through the strip glues (the south+east
attachment rule generates the full symmetric group on {0,1,2}); the
combine column folds the two transduced values and the rectangle's west
glue into the output bit.  Everything is certified by validate_gadget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ..core.types import MazeBuilder, TileSet
from ..errors import ValidationFailureError
from ..tilesets import COLLATZ_ID
from .model import IN, OUT, Gadget, Port, finalize, validate_gadget

# x = 3N + E = 2W + S lookup tables for the two attachment modes.
# South+east: tile determined by (S, E); emits W = x // 2 westward.
_SE_OUT = {}
_NE_OUT = {}
for _x in range(6):
    _SE_OUT[(_x % 2, _x % 3)] = _x // 2
    _NE_OUT[(_x // 3, _x % 3)] = (_x % 2, _x // 2)  # (south, west)


def _transduce(bit, norths):
    """Value leaving a wire that rode a strip with the given north glues."""
    e = bit
    for s in norths:
        e = _SE_OUT[(s, e)]
    return e


def _combine(value_a, value_b, west, taus):
    """Fold the column stack: taus[0] tops the first column; later
    columns reuse the west side effects of the previous one."""
    col_w = []
    s = taus[0]
    for e in (value_a, west, value_b):
        s, w = _NE_OUT[(s, e)]
        col_w.append(w)
    out = col_w[-1]
    for tau in taus[1:]:
        s = tau
        nxt = []
        for e in col_w:
            s, w = _NE_OUT[(s, e)]
            nxt.append(w)
        col_w = nxt
        out = col_w[-1]
    return out


@dataclass(frozen=True)
class GateConvention:
    """East-coming inputs, one vertical block (two rows) apart."""

    input_gap: int = 2
    max_columns: int = 2


STANDARD_CONVENTION = GateConvention()


@dataclass(frozen=True)
class ColumnSeed:
    """Family 1: strip-sandwich with 1-2 west combine columns and an
    optional run of trailing normalizer cells on the output row."""

    width: int
    norths_a: tuple
    norths_b: tuple
    west: int
    taus: tuple
    tail: tuple = ()

    @property
    def tile_count(self):
        return 2 * self.width + 3 * len(self.taus) + len(self.tail)

    def outputs(self):
        out = []
        for a in (0, 1):
            for bb in (0, 1):
                v = _combine(
                    _transduce(a, self.norths_a),
                    _transduce(bb, self.norths_b),
                    self.west,
                    self.taus,
                )
                for g in self.tail:
                    v = _SE_OUT[(g, v)]
                out.append(v)
        return out

    def build(self, table) -> Gadget:
        b = MazeBuilder()
        cols = len(self.taus)
        for i in range(self.width):
            b.add_glue(-i, -1, "N", str(self.norths_a[i]))
            b.add_glue(-i, -3, "N", str(self.norths_b[i]))
        b.add_glue(-(self.width - 1), -1, "W", str(self.west))
        for c, tau in enumerate(self.taus):
            b.add_glue(-(self.width + c), 1, "S", str(tau))
        out_x = -(self.width + cols - 1)
        if self.tail:
            b.add_cell(out_x - 1, -1)  # stopper over the first tail cell
        for i, g in enumerate(self.tail):
            b.add_glue(out_x - 1 - i, -3, "N", str(g))
        out_x -= len(self.tail)
        ports = (
            Port(0, 0, "E", IN, "h"),
            Port(0, -2, "E", IN, "h"),
            Port(out_x, -2, "W", OUT, "h"),
        )
        return Gadget(
            f"gate-{table}",
            COLLATZ_ID,
            b.build(),
            ports,
            (table,),
            self.tile_count,
        )


@dataclass(frozen=True)
class DescentSeed:
    """Family 2: the first input turns south through the second input's
    row; the junction's south glue carries the parity fold, which exits
    west one row below the second input (with optional normalizers)."""

    width: int
    norths_a: tuple
    kappa: int
    delta: int
    norths_b: tuple
    eps: int
    tail: tuple = ()

    @property
    def tile_count(self):
        return 2 * self.width + 4 + len(self.tail)

    def outputs(self):
        out = []
        for a in (0, 1):
            av = _transduce(a, self.norths_a)
            s1, _ = _NE_OUT[(self.kappa, av)]
            s2, _ = _NE_OUT[(s1, self.delta)]
            for bb in (0, 1):
                bv = _transduce(bb, self.norths_b)
                s3, _ = _NE_OUT[(s2, bv)]
                _s4, w4 = _NE_OUT[(s3, self.eps)]
                v = w4
                for g in self.tail:
                    v = _SE_OUT[(g, v)]
                out.append(v)
        return out

    def build(self, table) -> Gadget:
        b = MazeBuilder()
        p = self.width
        for i in range(p):
            b.add_glue(-i, -1, "N", str(self.norths_a[i]))
            b.add_glue(-i, -3, "N", str(self.norths_b[i]))
        b.add_glue(-p, 1, "S", str(self.kappa))
        b.add_glue(-(p - 1), -1, "W", str(self.delta))
        b.add_glue(-(p - 1), -3, "W", str(self.eps))
        if self.tail:
            b.add_cell(-p - 1, -2)  # stopper beside the junction's west glue
        for i, g in enumerate(self.tail):
            b.add_glue(-p - 1 - i, -4, "N", str(g))
        out_x = -p - len(self.tail)
        ports = (
            Port(0, 0, "E", IN, "h"),
            Port(0, -2, "E", IN, "h"),
            Port(out_x, -3, "W", OUT, "h"),
        )
        return Gadget(
            f"gate-{table}",
            COLLATZ_ID,
            b.build(),
            ports,
            (table,),
            self.tile_count,
        )


@dataclass(frozen=True)
class MixSeed:
    """Family 3: the first input turns south into the second input's row;
    the junction's rich west glue is folded through north-seeded
    normalizer cells on that row.  ``port`` picks which normalizer's west
    edge carries the output (later cells still grow, deterministically)."""

    width_a: int
    norths_a: tuple
    kappa: int
    delta: int
    width_b: int
    norths_b: tuple
    sigmas: tuple
    port: int  # output after this many normalizers (1-based)

    @property
    def tile_count(self):
        return self.width_a + self.width_b + 3 + len(self.sigmas)

    def outputs(self):
        out = []
        for a in (0, 1):
            av = _transduce(a, self.norths_a)
            s1, _ = _NE_OUT[(self.kappa, av)]
            s2, _ = _NE_OUT[(s1, self.delta)]
            for bb in (0, 1):
                bv = _transduce(bb, self.norths_b)
                _s3, w = _NE_OUT[(s2, bv)]
                for sigma in self.sigmas[: self.port]:
                    _s, w = _NE_OUT[(sigma, w)]
                out.append(w)
        return out

    def junk_ok(self):
        """Cells past the port must still grow deterministically, which
        they do whenever their east glue is non-null (always true)."""
        return True

    def build(self, table) -> Gadget:
        b = MazeBuilder()
        pa, pb = self.width_a, self.width_b
        for i in range(pa):
            b.add_glue(-i, -1, "N", str(self.norths_a[i]))
        for i in range(pb):
            b.add_glue(-i + (pb - pa), -3, "N", str(self.norths_b[i]))
        b.add_glue(-pa, 1, "S", str(self.kappa))
        b.add_glue(-(pa - 1), -1, "W", str(self.delta))
        for i, sigma in enumerate(self.sigmas):
            b.add_glue(-pa - 1 - i, -1, "S", str(sigma))
        out_x = -pa - self.port
        ports = (
            Port(0, 0, "E", IN, "h"),
            Port(pb - pa, -2, "E", IN, "h"),
            Port(out_x, -2, "W", OUT, "h"),
        )
        return Gadget(
            f"gate-{table}",
            COLLATZ_ID,
            b.build(),
            ports,
            (table,),
            self.tile_count,
        )

    def gluevec(self):
        return (
            tuple(self.norths_a)
            + (self.kappa, self.delta)
            + tuple(self.norths_b)
            + tuple(self.sigmas)
        )


def mix_seeds(width_a, width_b, n_sigmas, port):
    for norths_a in itertools.product((0, 1), repeat=width_a):
        for kappa in (0, 1):
            for delta in (0, 1, 2):
                for norths_b in itertools.product((0, 1), repeat=width_b):
                    for sigmas in itertools.product((0, 1), repeat=n_sigmas):
                        yield MixSeed(
                            width_a, norths_a, kappa, delta,
                            width_b, norths_b, sigmas, port,
                        )


def column_seeds(width, cols, tail_len):
    """All family-1 assignments for a shape, as lazily built seeds."""
    for norths_a in itertools.product((0, 1), repeat=width):
        for norths_b in itertools.product((0, 1), repeat=width):
            for west in (0, 1, 2):
                for taus in itertools.product((0, 1), repeat=cols):
                    for tail in itertools.product((0, 1), repeat=tail_len):
                        yield ColumnSeed(
                            width, norths_a, norths_b, west, taus, tail
                        )


def descent_seeds(width, tail_len):
    """All family-2 assignments for a shape."""
    for norths_a in itertools.product((0, 1), repeat=width):
        for norths_b in itertools.product((0, 1), repeat=width):
            for kappa in (0, 1):
                for delta in (0, 1, 2):
                    for eps in (0, 1, 2):
                        for tail in itertools.product((0, 1), repeat=tail_len):
                            yield DescentSeed(
                                width, norths_a, kappa, delta,
                                norths_b, eps, tail,
                            )


def _shapes(convention, max_w):
    shapes = []
    for width in range(1, max_w + 1):
        for cols in range(1, convention.max_columns + 1):
            for tail_len in (0, 1, 2):
                if width + cols + tail_len + 1 > max_w:
                    continue
                tiles = 2 * width + 3 * cols + tail_len
                shapes.append((tiles, "column", width, cols, tail_len))
        for tail_len in (0, 1, 2):
            if width + tail_len + 2 > max_w:
                continue
            tiles = 2 * width + 4 + tail_len
            shapes.append((tiles, "descent", width, 0, tail_len))
    shapes.sort()
    return shapes


def search_gate_seed(
    tileset: TileSet,
    table: str,
    dims=(9, 7),
    convention: GateConvention = STANDARD_CONVENTION,
) -> Optional[Gadget]:
    """Smallest rectangular gate seed realizing ``table``, or None.

    Enumerates every boundary glue assignment of both seed families,
    smallest tile count first (area breaks ties via the shape ordering),
    discarding assignments algebraically (wrong or non-bit output on some
    input) before certifying survivors with the exhaustive validator on
    the real engine.
    """
    if tileset.name != COLLATZ_ID:
        raise ValueError("gate-seed search targets the Collatz tile set")
    if len(table) != 4 or set(table) - {"0", "1"}:
        raise ValueError(f"bad table {table!r}")
    want = [int(b) for b in table]
    max_w, _max_h = dims
    for _tiles, family, width, cols, tail_len in _shapes(convention, max_w):
        gen = (
            column_seeds(width, cols, tail_len)
            if family == "column"
            else descent_seeds(width, tail_len)
        )
        for seed in gen:
            if seed.outputs() != want:
                continue
            gadget = seed.build(table)
            try:
                gadget = finalize(gadget, tileset)
                validate_gadget(gadget, tileset, check_orders=3)
            except ValidationFailureError:
                continue
            return gadget
    return None


def search_assignments(table, shapes_spec, limit=None):
    """All algebraically valid seeds of the given shapes for ``table``.

    Used by the library freezing script to pick glue-wise similar
    AND/OR/NAND/NOR representatives.
    """
    want = [int(b) for b in table]
    hits = []
    for family, width, cols, tail_len in shapes_spec:
        gen = (
            column_seeds(width, cols, tail_len)
            if family == "column"
            else descent_seeds(width, tail_len)
        )
        for seed in gen:
            if seed.outputs() == want:
                hits.append(seed)
                if limit and len(hits) >= limit:
                    return hits
    return hits
