"""Boolean circuit IR: netlist parsing, evaluation, planarization, layering.

Gates are identified by integer ids.  Compute gates carry an explicit
truth table: 4 bits for 2-input gates and 2 bits for 1-input gates,
indexed by the inputs read as a binary number (the bit for inputs (a, b)
is table[2a + b]).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .errors import LengthMismatchError, NetlistError

INPUT = "input"
OUTPUT = "output"
CONST0 = "const0"
CONST1 = "const1"
FANOUT = "fanout"
CROSSOVER = "crossover"
TABLE = "table"  # carries .table: "xx" (1-in) or "xxxx" (2-in)

OP_TABLES = {
    "AND": "0001",
    "OR": "0111",
    "XOR": "0110",
    "NAND": "1110",
    "NOR": "1000",
    "NXOR": "1001",
    "NOT": "10",
    "ID": "01",
}


def gate_arity(kind: str, table: Optional[str] = None) -> Tuple[int, int]:
    """(fan-in, fan-out) per gate kind."""
    if kind in (INPUT, CONST0, CONST1):
        return (0, 1)
    if kind == OUTPUT:
        return (1, 0)
    if kind == FANOUT:
        return (1, 2)
    if kind == CROSSOVER:
        return (2, 2)
    if kind == TABLE:
        return (1, 1) if len(table or "") == 2 else (2, 1)
    raise ValueError(f"unknown gate kind {kind!r}")


@dataclass(frozen=True)
class Gate:
    gid: int
    kind: str
    table: Optional[str] = None
    name: Optional[str] = None

    @property
    def arity(self):
        return gate_arity(self.kind, self.table)


@dataclass(frozen=True)
class Wire:
    src: int
    src_pin: int
    dst: int
    dst_pin: int


class Circuit:
    """Validated gate DAG with a single output gate."""

    def __init__(self, gates: List[Gate], wires: List[Wire], inputs, output):
        self.gates = {g.gid: g for g in gates}
        self.wires = tuple(wires)
        self.inputs = tuple(inputs)
        self.output = output
        self._check()

    def _check(self):
        out_used: Dict[Tuple[int, int], int] = {}
        in_used: Dict[Tuple[int, int], int] = {}
        for wi in self.wires:
            for gid in (wi.src, wi.dst):
                if gid not in self.gates:
                    raise NetlistError(f"wire references unknown gate {gid}")
            out_used[(wi.src, wi.src_pin)] = out_used.get((wi.src, wi.src_pin), 0) + 1
            in_used[(wi.dst, wi.dst_pin)] = in_used.get((wi.dst, wi.dst_pin), 0) + 1
        for g in self.gates.values():
            fan_in, fan_out = g.arity
            for pin in range(fan_in):
                if in_used.get((g.gid, pin), 0) != 1:
                    raise NetlistError(
                        f"gate {g.name or g.gid} input pin {pin} not driven exactly once"
                    )
            for pin in range(fan_out):
                if out_used.get((g.gid, pin), 0) != 1:
                    raise NetlistError(
                        f"gate {g.name or g.gid} output pin {pin} not consumed exactly once"
                    )
        self.topo_order()  # raises on cycles

    def wire_into(self, gid, pin):
        for wi in self.wires:
            if wi.dst == gid and wi.dst_pin == pin:
                return wi
        raise NetlistError(f"no wire into gate {gid} pin {pin}")

    def preds(self, gid):
        g = self.gates[gid]
        return [self.wire_into(gid, pin) for pin in range(g.arity[0])]

    def topo_order(self):
        indeg = {gid: self.gates[gid].arity[0] for gid in self.gates}
        ready = sorted(gid for gid, d in indeg.items() if d == 0)
        succs: Dict[int, List[int]] = {gid: [] for gid in self.gates}
        for wi in self.wires:
            succs[wi.src].append(wi.dst)
        order = []
        while ready:
            gid = ready.pop(0)
            order.append(gid)
            for nxt in succs[gid]:
                indeg[nxt] -= 1
                if indeg[nxt] == 0:
                    ready.append(nxt)
        if len(order) != len(self.gates):
            raise NetlistError("cycle detected")
        return order

    @property
    def size(self):
        return len(self.gates)

    @property
    def depth(self):
        level = {}
        for gid in self.topo_order():
            preds = self.preds(gid)
            level[gid] = 0 if not preds else 1 + max(level[w.src] for w in preds)
        return level[self.output]


def evaluate(circuit: Circuit, bits) -> int:
    """Topological evaluation; this is the oracle for every compiled maze."""
    if len(bits) != len(circuit.inputs):
        raise LengthMismatchError(
            f"expected {len(circuit.inputs)} input bits, got {len(bits)}"
        )
    values: Dict[Tuple[int, int], int] = {}
    feed = {gid: int(b) for gid, b in zip(circuit.inputs, bits)}
    for gid in circuit.topo_order():
        g = circuit.gates[gid]
        ins = [values[(w.src, w.src_pin)] for w in circuit.preds(gid)]
        if g.kind == INPUT:
            outs = [feed[gid]]
        elif g.kind == CONST0:
            outs = [0]
        elif g.kind == CONST1:
            outs = [1]
        elif g.kind == FANOUT:
            outs = [ins[0], ins[0]]
        elif g.kind == CROSSOVER:
            outs = [ins[1], ins[0]]
        elif g.kind == TABLE:
            idx = ins[0] if len(ins) == 1 else ins[0] * 2 + ins[1]
            outs = [int(g.table[idx])]
        elif g.kind == OUTPUT:
            values[(gid, 0)] = ins[0]
            continue
        for pin, v in enumerate(outs):
            values[(gid, pin)] = v
    return values[(circuit.output, 0)]


def parse_netlist(text: str) -> Circuit:
    """Parse the line-oriented netlist format.

    Grammar: ``in <name>`` (order significant), ``const <name> <0|1>``,
    ``<name> = <OP>(<args>)`` with OP in NOT, AND, OR, XOR, NAND, NOR,
    NXOR, ID or TT<4bits>, and a single ``out <name>``.  A signal
    referenced twice is split with an implicit fanout gate.
    """
    defs = {}  # signal -> ("in",) | ("const", b) | ("op", table, args, line)
    order = []
    inputs = []
    out_name = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "in":
            if len(parts) != 2:
                raise NetlistError("in takes one name", line=ln)
            name = parts[1]
            if name in defs:
                raise NetlistError(f"signal {name!r} redefined", line=ln)
            defs[name] = ("in",)
            order.append(name)
            inputs.append(name)
        elif parts[0] == "const":
            if len(parts) != 3 or parts[2] not in ("0", "1"):
                raise NetlistError("const takes a name and 0|1", line=ln)
            name = parts[1]
            if name in defs:
                raise NetlistError(f"signal {name!r} redefined", line=ln)
            defs[name] = ("const", int(parts[2]))
            order.append(name)
        elif parts[0] == "out":
            if len(parts) != 2:
                raise NetlistError("out takes one name", line=ln)
            if out_name is not None:
                raise NetlistError("multiple outputs are not supported", line=ln)
            out_name = (parts[1], ln)
        elif "=" in line:
            lhs, rhs = [s.strip() for s in line.split("=", 1)]
            if not lhs or " " in lhs:
                raise NetlistError("malformed assignment", line=ln)
            if lhs in defs:
                raise NetlistError(f"signal {lhs!r} redefined", line=ln)
            if "(" not in rhs or not rhs.endswith(")"):
                raise NetlistError("expected OP(args)", line=ln)
            op, argstr = rhs[:-1].split("(", 1)
            op = op.strip().upper()
            args = [a.strip() for a in argstr.split(",")] if argstr.strip() else []
            if op in OP_TABLES:
                table = OP_TABLES[op]
            elif op.startswith("TT") and len(op) == 6 and set(op[2:]) <= {"0", "1"}:
                table = op[2:]
            else:
                raise NetlistError(f"unknown operation {op!r}", line=ln)
            want = 1 if len(table) == 2 else 2
            if len(args) != want:
                raise NetlistError(
                    f"{op} takes {want} argument(s), got {len(args)}", line=ln
                )
            defs[lhs] = ("op", table, args, ln)
            order.append(lhs)
        else:
            raise NetlistError(f"cannot parse {line!r}", line=ln)
    if out_name is None:
        raise NetlistError("netlist has no out line")

    # Reference counting for implicit fanouts; cycle detection comes from
    # the Circuit constructor via topological ordering.
    uses: Dict[str, int] = {}

    def use(name, ln):
        if name not in defs:
            raise NetlistError(f"undefined signal {name!r}", line=ln)
        uses[name] = uses.get(name, 0) + 1

    for name in order:
        d = defs[name]
        if d[0] == "op":
            for a in d[2]:
                use(a, d[3])
    use(out_name[0], out_name[1])

    gates: List[Gate] = []
    wires: List[Wire] = []
    next_gid = [0]

    def new_gate(kind, table=None, name=None):
        g = Gate(next_gid[0], kind, table, name)
        next_gid[0] += 1
        gates.append(g)
        return g

    sig_gate = {}
    for name in order:
        d = defs[name]
        if d[0] == "in":
            sig_gate[name] = new_gate(INPUT, name=name)
        elif d[0] == "const":
            sig_gate[name] = new_gate(CONST1 if d[1] else CONST0, name=name)
        else:
            sig_gate[name] = new_gate(TABLE, table=d[1], name=name)

    # Fanout trees: per signal, a queue of available source pins.
    available = {name: [(sig_gate[name].gid, 0)] for name in defs}

    def take(name):
        src = available[name].pop(0)
        remaining = uses[name]
        uses[name] -= 1
        if uses[name] >= 1 and not available[name]:
            fo = new_gate(FANOUT, name=f"{name}~fan")
            wires.append(Wire(src[0], src[1], fo.gid, 0))
            available[name] = [(fo.gid, 0), (fo.gid, 1)]
            src = available[name].pop(0)
        return src

    for name in order:
        d = defs[name]
        if d[0] == "op":
            for pin, a in enumerate(d[2]):
                src = take(a)
                wires.append(Wire(src[0], src[1], sig_gate[name].gid, pin))
    out_gate = new_gate(OUTPUT, name="out")
    src = take(out_name[0])
    wires.append(Wire(src[0], src[1], out_gate.gid, 0))

    for name, n in uses.items():
        if n > 0 and defs[name][0] != "in":
            raise NetlistError(f"signal {name!r} is never consumed")
    input_gids = [sig_gate[n].gid for n in inputs]
    return Circuit(gates, wires, input_gids, out_gate.gid)


@dataclass(frozen=True)
class PlanarCircuit:
    """A circuit whose adjacent-layer wiring is crossing-free.

    Identical function to the source circuit; the only additions are ID
    gates (for layer skips) and crossover gates (one per wire crossing of
    the layered drawing).
    """

    circuit: Circuit
    layers: tuple  # tuple of tuples of gids, east (inputs) to west (output)
    rows: dict  # gid -> row index within its layer
    crossover_count: int

    def evaluate(self, bits):
        return evaluate(self.circuit, bits)


def _layering(circuit: Circuit):
    level = {}
    for gid in circuit.topo_order():
        preds = circuit.preds(gid)
        level[gid] = 0 if not preds else 1 + max(level[w.src] for w in preds)
    return level


def planarize(circuit: Circuit) -> PlanarCircuit:
    """Layer the circuit and replace every wire crossing with a crossover.

    Gate order within a layer is fixed (input order, then creation order);
    crossings between adjacent layers are removed with odd-even bubble
    passes, one crossover gate per adjacent transposition, each pass
    forming its own sub-layer.  No crossing minimization is attempted.
    """
    gates = [circuit.gates[g] for g in sorted(circuit.gates)]
    wires = list(circuit.wires)
    next_gid = max(circuit.gates) + 1
    level = _layering(circuit)

    # Insert ID gates so every wire spans exactly one layer.
    patched = []
    for wi in wires:
        span = level[wi.dst] - level[wi.src]
        if span <= 0:
            raise NetlistError("layering failed to orient a wire")
        src, pin = wi.src, wi.src_pin
        for k in range(span - 1):
            idg = Gate(next_gid, TABLE, "01", name=f"id{next_gid}")
            next_gid += 1
            gates.append(idg)
            level[idg.gid] = level[wi.src] + 1 + k
            patched.append(Wire(src, pin, idg.gid, 0))
            src, pin = idg.gid, 0
        patched.append(Wire(src, pin, wi.dst, wi.dst_pin))
    wires = patched

    depth = max(level.values()) + 1
    layers: List[List[int]] = [[] for _ in range(depth)]
    for g in gates:
        layers[level[g.gid]].append(g.gid)
    gate_map = {g.gid: g for g in gates}

    # Row order: layer 0 follows declared input order; later layers track
    # the vertical positions of their predecessors (all in the previous
    # layer once IDs are in), ties broken by creation order.
    input_rank = {gid: i for i, gid in enumerate(circuit.inputs)}
    layers[0].sort(key=lambda gid: (input_rank.get(gid, len(input_rank)), gid))
    pred_pins: Dict[int, List[Tuple[int, int]]] = {g.gid: [] for g in gates}
    for wi in wires:
        pred_pins[wi.dst].append((wi.src, wi.src_pin))
    for i in range(1, depth):
        src_slot = {}
        slot = 0
        for gid in layers[i - 1]:
            for pin in range(gate_map[gid].arity[1]):
                src_slot[(gid, pin)] = slot
                slot += 1

        def row_key(gid):
            slots = [src_slot[p] for p in pred_pins[gid]]
            return (sum(slots) / len(slots), max(slots), gid)

        layers[i].sort(key=row_key)
    crossovers = 0
    final_layers: List[List[int]] = []
    out_wires: List[Wire] = []

    for i in range(depth - 1):
        final_layers.append(layers[i])
        src_slot = {}
        slot = 0
        for gid in layers[i]:
            for pin in range(gate_map[gid].arity[1]):
                src_slot[(gid, pin)] = slot
                slot += 1
        dst_slot = {}
        slot = 0
        for gid in layers[i + 1]:
            for pin in range(gate_map[gid].arity[0]):
                dst_slot[(gid, pin)] = slot
                slot += 1
        band = sorted(
            (w for w in wires if w.src in set(layers[i])),
            key=lambda w: src_slot[(w.src, w.src_pin)],
        )
        # Per vertical position k: the chain end so far, the eventual
        # destination pin, and that destination's slot.
        ends = [(w.src, w.src_pin) for w in band]
        finals = [(w.dst, w.dst_pin) for w in band]
        targets = [dst_slot[(w.dst, w.dst_pin)] for w in band]
        while any(targets[k] > targets[k + 1] for k in range(len(targets) - 1)):
            sub: List[int] = []
            k = 0
            while k < len(targets) - 1:
                if targets[k] > targets[k + 1]:
                    xg = Gate(next_gid, CROSSOVER, name=f"xo{next_gid}")
                    next_gid += 1
                    gates.append(xg)
                    gate_map[xg.gid] = xg
                    crossovers += 1
                    sub.append(xg.gid)
                    out_wires.append(Wire(ends[k][0], ends[k][1], xg.gid, 0))
                    out_wires.append(Wire(ends[k + 1][0], ends[k + 1][1], xg.gid, 1))
                    # out pin 0 carries the old lower signal (the swap).
                    ends[k], ends[k + 1] = (xg.gid, 0), (xg.gid, 1)
                    finals[k], finals[k + 1] = finals[k + 1], finals[k]
                    targets[k], targets[k + 1] = targets[k + 1], targets[k]
                    k += 2
                else:
                    k += 1
            final_layers.append(sub)
        for e, f in zip(ends, finals):
            out_wires.append(Wire(e[0], e[1], f[0], f[1]))
        wires = [w for w in wires if w.src not in set(layers[i])]
    final_layers.append(layers[depth - 1])

    rows = {}
    for layer in final_layers:
        for r, gid in enumerate(layer):
            rows[gid] = r
    planar = Circuit(gates, out_wires, circuit.inputs, circuit.output)
    return PlanarCircuit(
        circuit=planar,
        layers=tuple(tuple(l) for l in final_layers),
        rows=rows,
        crossover_count=crossovers,
    )


@dataclass(frozen=True)
class LayeredPlan:
    """Grid plan: layer i sits at x-band -i, row r within a layer at a
    y-band determined by the backend."""

    planar: PlanarCircuit

    @property
    def layers(self):
        return self.planar.layers

    @property
    def circuit(self):
        return self.planar.circuit

    def layer_of(self, gid):
        for i, layer in enumerate(self.layers):
            if gid in layer:
                return i
        raise KeyError(gid)

    @property
    def depth(self):
        return len(self.layers)


def layer(planar: PlanarCircuit) -> LayeredPlan:
    """Wrap a planarized circuit as an explicit layered plan."""
    return LayeredPlan(planar)
