"""Cooperative attachment engine.

``attachable_tiles``/``attach``/``frontier`` are small pure functions over
Assembly values.  ``run_to_terminal`` delegates the hot loop to a kernel:
the Cython extension when importable, otherwise the pure-Python twin
(forced with MAWATAM_PURE_PY=1).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from ..errors import (
    InsufficientBondsError,
    MismatchError,
    OccupiedPositionError,
    StepBudgetExceededError,
)
from .types import NULL_GLUE, SIDES, Assembly, Maze, TileSet, neighbor

DEFAULT_STEP_BUDGET = 10**6

if os.environ.get("MAWATAM_PURE_PY"):
    from . import _kernel_py as _kernel

    KERNEL_IMPL = "python"
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]

        KERNEL_IMPL = "cython"
    except ImportError:
        from . import _kernel_py as _kernel

        KERNEL_IMPL = "python"


@dataclass(frozen=True)
class RunReport:
    """Outcome bookkeeping for one run_to_terminal call."""

    steps: int
    policy: str
    rng_seed: Optional[int]
    nondeterministic: bool
    nondet_pos: Optional[tuple]
    nondet_step: Optional[int]
    mismatches: tuple  # ((x, y), side) pairs observed at placement time


def _inward_glues(assembly: Assembly, pos, tileset: TileSet):
    return {side: assembly.presented_into(pos, side, tileset) for side in SIDES}


def _match_counts(tile, inward):
    matches = 0
    mismatch = False
    for side in SIDES:
        a = inward[side]
        if a == NULL_GLUE:
            continue
        g = tile.glue(side)
        if g == a:
            matches += 1
        elif g != NULL_GLUE:
            mismatch = True
    return matches, mismatch


def attachable_tiles(assembly: Assembly, pos, tileset: TileSet, strict=False):
    """Tile types with >= 2 matching non-null glues at ``pos``.

    In strict mode a candidate abutting any unequal non-null glue pair is
    excluded.  Returns a tuple in tile-set order (empty if pos occupied).
    """
    if assembly.occupied(pos):
        return ()
    inward = _inward_glues(assembly, pos, tileset)
    out = []
    for tile in tileset:
        matches, mismatch = _match_counts(tile, inward)
        if matches >= 2 and not (strict and mismatch):
            out.append(tile)
    return tuple(out)


def attach(assembly: Assembly, pos, tile, tileset: TileSet, strict=False):
    """Place one tile cooperatively; returns a new Assembly."""
    if assembly.occupied(pos):
        raise OccupiedPositionError(f"position {pos} is occupied")
    inward = _inward_glues(assembly, pos, tileset)
    matches, mismatch = _match_counts(tile, inward)
    if matches < 2:
        raise InsufficientBondsError(
            f"tile {tile.name!r} has {matches} matching glue(s) at {pos}"
        )
    if strict and mismatch:
        raise MismatchError(f"tile {tile.name!r} mismatches a glue at {pos}")
    return assembly.with_tile(pos, tile)


def _candidate_positions(assembly: Assembly, tileset: TileSet):
    """Empty cells adjacent to at least one presented glue."""
    spots = set()
    for (x, y, side) in assembly.maze.glues:
        spots.add(neighbor((x, y), side))
    for pos in assembly.placed:
        for side in SIDES:
            spots.add(neighbor(pos, side))
    return {p for p in spots if not assembly.occupied(p)}


def frontier(assembly: Assembly, tileset: TileSet, strict=False):
    """Unoccupied positions where attachable_tiles is non-empty."""
    return {
        p
        for p in _candidate_positions(assembly, tileset)
        if attachable_tiles(assembly, p, tileset, strict)
    }


class _Job:
    """Dense-grid encoding of one maze + tileset for the kernel."""

    def __init__(self, maze: Maze, tileset: TileSet):
        self.maze = maze
        self.tileset = tileset
        xmin, ymin, xmax, ymax = maze.bounding_box()
        self.xmin, self.ymin = xmin, ymin
        self.w = max(xmax - xmin + 1, 1)
        self.h = max(ymax - ymin + 1, 1)
        self.glue_ids = {NULL_GLUE: 0}

        def gid(label):
            if label not in self.glue_ids:
                self.glue_ids[label] = len(self.glue_ids)
            return self.glue_ids[label]

        self.tn = [gid(t.n) for t in tileset]
        self.te = [gid(t.e) for t in tileset]
        self.ts = [gid(t.s) for t in tileset]
        self.tw = [gid(t.w) for t in tileset]
        self.seed_glues = [
            (x, y, side, gid(label)) for (x, y, side), label in maze.glues.items()
        ]

    def index(self, pos):
        return (pos[1] - self.ymin) * self.w + (pos[0] - self.xmin)

    def pos(self, idx):
        return (idx % self.w + self.xmin, idx // self.w + self.ymin)

    def grids(self, placed):
        size = self.w * self.h
        occ = [0] * size
        gn = [0] * size
        ge = [0] * size
        gs = [0] * size
        gw = [0] * size
        planes = {"N": gn, "E": ge, "S": gs, "W": gw}
        dirty = []
        for cell in self.maze.cells:
            occ[self.index(cell)] = 1
        for x, y, side, g in self.seed_glues:
            idx = self.index((x, y))
            planes[side][idx] = g
            nb = neighbor((x, y), side)
            if (
                self.xmin <= nb[0] < self.xmin + self.w
                and self.ymin <= nb[1] < self.ymin + self.h
            ):
                dirty.append(self.index(nb))
        tiles = {t.name: i for i, t in enumerate(self.tileset)}
        for pos, name in placed.items():
            idx = self.index(pos)
            occ[idx] = 2
            t = tiles[name]
            gn[idx] = self.tn[t]
            ge[idx] = self.te[t]
            gs[idx] = self.ts[t]
            gw[idx] = self.tw[t]
            for side in SIDES:
                nb = neighbor(pos, side)
                if (
                    self.xmin <= nb[0] < self.xmin + self.w
                    and self.ymin <= nb[1] < self.ymin + self.h
                ):
                    dirty.append(self.index(nb))
        return occ, gn, ge, gs, gw, dirty


def run_to_terminal(
    assembly: Assembly,
    tileset: TileSet,
    policy: str = "raster",
    rng_seed: Optional[int] = None,
    max_steps: int = DEFAULT_STEP_BUDGET,
    strict: bool = False,
):
    """Grow until no tile can attach; returns (terminal, RunReport).

    ``policy`` is one of ``raster`` (lexicographic position, first matching
    tile in tile-set order) or ``random`` (seeded uniform choice among
    frontier positions and admissible tiles).
    """
    if policy not in ("raster", "random"):
        raise ValueError(f"unknown order policy {policy!r}")
    if policy == "random" and rng_seed is None:
        rng_seed = 0
    job = _Job(assembly.maze, tileset)
    occ, gn, ge, gs, gw, dirty = job.grids(assembly.placed)
    placements, nondet_step, nondet_idx, raw_mismatches, budget_hit = _kernel.assemble(
        job.w,
        job.h,
        occ,
        gn,
        ge,
        gs,
        gw,
        job.tn,
        job.te,
        job.ts,
        job.tw,
        dirty,
        0 if policy == "raster" else 1,
        rng_seed or 0,
        max_steps,
        1 if strict else 0,
    )
    placed = dict(assembly.placed)
    trace = list(assembly.trace)
    names = [t.name for t in tileset]
    for idx, tidx in placements:
        pos = job.pos(idx)
        placed[pos] = names[tidx]
        trace.append((pos, names[tidx]))
    report = RunReport(
        steps=len(placements),
        policy=policy,
        rng_seed=rng_seed,
        nondeterministic=nondet_step >= 0,
        nondet_pos=job.pos(nondet_idx) if nondet_idx >= 0 else None,
        nondet_step=nondet_step if nondet_step >= 0 else None,
        mismatches=tuple(
            (job.pos(idx), "NESW"[side]) for idx, side in raw_mismatches
        ),
    )
    result = Assembly(assembly.maze, placed, tuple(trace))
    if budget_hit:
        err = StepBudgetExceededError(
            f"attachment budget of {max_steps} exhausted before terminal"
        )
        err.partial = result
        err.report = report
        raise err
    return result, report


def enumerate_terminals(
    assembly: Assembly, tileset: TileSet, strict=False, max_states=200_000
):
    """Breadth-first exploration of every attachment order.

    Returns the set of terminal placed-maps (as frozensets of (pos, name)).
    Intended for small assemblies; raises MemoryError past ``max_states``.
    """
    start = frozenset(assembly.placed.items())
    seen = {start}
    queue = [assembly]
    terminals = {}
    while queue:
        current = queue.pop()
        moves = []
        for pos in _candidate_positions(current, tileset):
            for tile in attachable_tiles(current, pos, tileset, strict):
                moves.append((pos, tile))
        if not moves:
            terminals[frozenset(current.placed.items())] = current
            continue
        for pos, tile in moves:
            nxt = current.with_tile(pos, tile)
            key = frozenset(nxt.placed.items())
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > max_states:
                raise MemoryError("order-space enumeration exceeded max_states")
            queue.append(nxt)
    return terminals
