"""Scratch v2: trace specific trajectory-tile candidates on (75, 7)."""
import sys

sys.path.insert(0, "src")

from mawatam.core.types import Assembly, Maze, TileSet, TileType
from mawatam.core.engine import run_to_terminal


def oracle(x, n):
    for _ in range(n):
        x = x // 2 if x % 2 == 0 else (3 * x + 1) // 2
    return x


def base_tiles():
    return [
        TileType(str(x), n=str(x // 3), e=str(x % 3), w=str(x // 2), s=str(x % 2))
        for x in range(6)
    ]


def build_seed(x, n, L):
    bits = bin(x)[2:].rjust(L, "0")
    cells = set()
    glues = {}
    for i in range(L):
        cells.add((-i, 0))
        glues[(-i, 0, "S")] = bits[L - 1 - i]
    cells.add((1, 0))
    for k in range(1, n + 1):
        cells.add((1, -k))
        glues[(1, -k, "W")] = "S"
    return Maze(cells=frozenset(cells), glues=glues)


def show(term, ts, n, L):
    for k in range(0, n + 1):
        row = []
        for c in range(-L, 2):
            if (c, -k) in term.maze.cells:
                row.append("#")
            elif (c, -k) in term.placed:
                row.append(term.placed[(c, -k)][-1])
            else:
                row.append(".")
        print(f"y={-k:3d} " + "".join(row))


def west_digits(term, ts, n, L):
    out = []
    for k in range(1, n + 1):
        row = [(xx, yy) for (xx, yy) in term.placed if yy == -k]
        if not row:
            out.append(None)
            continue
        wx = min(c[0] for c in row)
        out.append((ts[term.placed[(wx, -k)]].w, wx))
    return out


def main():
    x, n = 75, 7
    tiles = base_tiles() + [
        TileType("S0", n="0", e="S", w="S", s="0"),
        TileType("S1", n="1", e="S", w="2", s="0"),
    ]
    ts = TileSet("collatz-ext", tiles)
    L = max(x.bit_length(), n)
    maze = build_seed(x, n, L)
    term, rep = run_to_terminal(Assembly(maze), ts, max_steps=100000)
    print("nondet:", rep.nondeterministic, rep.nondet_pos, "steps:", rep.steps,
          "mismatches:", rep.mismatches[:5])
    show(term, ts, n, L)
    print("west:", west_digits(term, ts, n, L))
    v = 0
    for d, _ in west_digits(term, ts, n, L):
        if d not in (None, "S"):
            v = v * 3 + int(d)
    print("value:", v, "oracle:", oracle(x, n))


if __name__ == "__main__":
    main()
