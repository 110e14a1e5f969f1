"""Scratch: debug crossover gadgets with an ASCII dump per input combo."""
import sys

sys.path.insert(0, "src")

from mawatam.core.engine import run_to_terminal
from mawatam.core.types import Assembly, glue_at, EdgeSite
from mawatam.gadgets.model import input_stub, validate_gadget
from mawatam.errors import ValidationFailureError


def show(gadget, tileset):
    k = len(gadget.in_ports)
    for combo in range(2 ** k):
        bits = tuple((combo >> (k - 1 - i)) & 1 for i in range(k))
        maze = gadget.maze
        for port, bit in zip(gadget.in_ports, bits):
            maze = maze.merged(input_stub(port, bit))
        term, rep = run_to_terminal(Assembly(maze), tileset)
        outs = [glue_at(term, p.edge, tileset) for p in gadget.out_ports]
        exp = [str(int(t[combo]) ^ (p.polarity == "negated"))
               for t, p in zip(gadget.tables, gadget.out_ports)]
        xs = [c[0] for c in term.maze.cells | set(term.placed)]
        ys = [c[1] for c in term.maze.cells | set(term.placed)]
        print(f"--- input {bits} -> outs {outs} expect {exp} "
              f"tiles={len(term.placed)}/{gadget.tile_count} "
              f"nondet={rep.nondeterministic} mism={len(rep.mismatches)}")
        for y in range(max(ys), min(ys) - 1, -1):
            row = ""
            for x in range(min(xs), max(xs) + 1):
                if (x, y) in term.placed:
                    row += term.placed[(x, y)][-1]
                elif (x, y) in term.maze.cells:
                    row += "#"
                else:
                    row += "."
            print(f"{y:4d} {row}")


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "nn"
    if which == "nn":
        from mawatam.tilesets import nand_nxor
        from mawatam.gadgets.nandnxor import crossover
        show(crossover(), nand_nxor())
    else:
        from mawatam.tilesets import collatz
        from mawatam.gadgets.collatzlib import crossover
        show(crossover(), collatz())
