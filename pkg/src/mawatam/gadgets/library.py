"""Builtin gadget libraries: every validated piece for one tile set."""

from __future__ import annotations

import functools
import importlib.resources as resources
import itertools

from ..core.types import TileSet
from ..tilesets import COLLATZ_ID, NAND_NXOR_ID, builtin_tileset
from . import collatzlib, nandnxor
from .model import Gadget, finalize, load_gadget, validate_gadget

ALL_TABLES = tuple("".join(b) for b in itertools.product("01", repeat=4))


class GadgetLibrary:
    """Validated gadgets for one tile set, keyed by role.

    Fixed roles: gate-<tttt> (16 tables), not, id, const0, const1,
    turn-ws, turn-sw, fanout, crossover, plus turn-ws-neg, fanout-odd and
    buffer for the Collatz set.  Wires are parameterized: hwire(n) and
    vwire(n).
    """

    def __init__(self, tileset: TileSet, fixed, hwire, vwire):
        self.tileset = tileset
        self.tileset_id = tileset.name
        self._fixed = dict(fixed)
        self._hwire = hwire
        self._vwire = vwire
        self._wire_cache = {}

    def __getitem__(self, role: str) -> Gadget:
        return self._fixed[role]

    def __contains__(self, role):
        return role in self._fixed

    def roles(self):
        return sorted(self._fixed)

    def gate(self, table: str) -> Gadget:
        return self._fixed[f"gate-{table}"]

    def gates(self):
        return {t: self._fixed[f"gate-{t}"] for t in ALL_TABLES}

    def hwire(self, length: int) -> Gadget:
        key = ("h", length)
        if key not in self._wire_cache:
            self._wire_cache[key] = self._hwire(length)
        return self._wire_cache[key]

    def vwire(self, length: int) -> Gadget:
        key = ("v", length)
        if key not in self._wire_cache:
            self._wire_cache[key] = self._vwire(length)
        return self._wire_cache[key]

    def validate_all(self, check_orders=0, exhaustive_limit=0):
        """Re-validate every fixed gadget; returns {role: report}."""
        return {
            role: validate_gadget(
                g,
                self.tileset,
                check_orders=check_orders,
                exhaustive_limit=exhaustive_limit,
            )
            for role, g in sorted(self._fixed.items())
        }


def _load_collatz_gates():
    pkg = resources.files(__package__) / "data" / "collatz"
    gates = {}
    for table in ALL_TABLES:
        text = (pkg / f"gate-{table}.gadget").read_text()
        gates[f"gate-{table}"] = load_gadget(text)
    return gates


@functools.lru_cache(maxsize=None)
def builtin_library(tileset_id: str) -> GadgetLibrary:
    """The complete validated library for a builtin tile set."""
    tileset = builtin_tileset(tileset_id)
    if tileset_id == NAND_NXOR_ID:
        fixed = {
            "turn-ws": nandnxor.turn_ws(),
            "turn-sw": nandnxor.turn_sw(),
            "not": nandnxor.hnot(),
            "id": nandnxor.hid(),
            "const0": nandnxor.const(0),
            "const1": nandnxor.const(1),
            "fanout": nandnxor.fanout_ws(),
            "fanout-sw": nandnxor.fanout_sw(),
            "crossover": nandnxor.crossover(),
        }
        for table in ALL_TABLES:
            fixed[f"gate-{table}"] = nandnxor.gate(table)
        hwire, vwire = nandnxor.hwire, nandnxor.vwire
    elif tileset_id == COLLATZ_ID:
        fixed = {
            "turn-ws": collatzlib.turn_ws(False),
            "turn-ws-neg": collatzlib.turn_ws(True),
            "turn-sw": collatzlib.turn_sw(),
            "not": collatzlib.not_gadget(),
            "id": collatzlib.id_gadget(),
            "const0": collatzlib.const(0),
            "const1": collatzlib.const(1),
            "fanout": collatzlib.fanout(False),
            "fanout-odd": collatzlib.fanout(True),
            "buffer": collatzlib.buffer_(),
            "crossover": collatzlib.crossover(),
        }
        fixed.update(_load_collatz_gates())
        hwire, vwire = collatzlib.hwire, collatzlib.vwire
    else:
        raise KeyError(f"no builtin library for tile set {tileset_id!r}")
    fixed = {role: finalize(g, tileset) for role, g in fixed.items()}

    def make_h(n):
        return finalize(hwire(n), tileset)

    def make_v(n):
        return finalize(vwire(n), tileset)

    return GadgetLibrary(tileset, fixed, make_h, make_v)
