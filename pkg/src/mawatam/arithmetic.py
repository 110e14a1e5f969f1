"""Collatz trajectory assemblies, powers-of-2 columns, rectangle identity.

Every construction here is checked against a direct big-integer oracle in
the test suite; the assemblies are the *computation*, the oracles are the
ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core.engine import run_to_terminal
from .core.types import Assembly, EdgeSite, Maze, glue_at
from .errors import MawatamError, NondeterminismError, RectNotFullyTiledError
from .tilesets import S_GLUE, collatz


def collatz_oracle(x: int, n: int) -> int:
    """Iterate T(x) = x/2 (even) or (3x+1)/2 (odd) exactly n times."""
    if x < 1:
        raise ValueError("x must be >= 1")
    for _ in range(n):
        x = x // 2 if x % 2 == 0 else (3 * x + 1) // 2
    return x


def collatz_seed(x: int, n: int) -> Maze:
    """North-east L-shaped seed for n trajectory steps of x.

    North arm: binary of x, LSB on the east (column 0), zero-padded on the
    west to width max(n, bitlen(x)).  East arm: n "S" glues facing west.
    The width doubles as the step counter: each T step consumes exactly
    one column, so n steps need n columns.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    width = max(n, x.bit_length())
    bits = bin(x)[2:].rjust(width, "0")
    cells = set()
    glues = {}
    for i in range(width):
        cells.add((-i, 0))
        glues[(-i, 0, "S")] = bits[width - 1 - i]
    cells.add((1, 0))
    for k in range(1, n + 1):
        cells.add((1, -k))
        glues[(1, -k, "W")] = S_GLUE
    return Maze(cells=frozenset(cells), glues=glues)


@dataclass(frozen=True)
class DigitReading:
    """An ordered run of edges decoded as a number, MSB first."""

    edges: tuple  # EdgeSites, most significant first
    base: int  # 2 or 3
    skip_labels: tuple = ()

    def __post_init__(self):
        if self.base not in (2, 3):
            raise ValueError("base must be 2 or 3")


def read_digits(assembly: Assembly, reading: DigitReading, tileset) -> int:
    """Decode a digit run from an assembly's glues."""
    value = 0
    for edge in reading.edges:
        label = glue_at(assembly, edge, tileset)
        if label in reading.skip_labels:
            continue
        if not label.isdigit() or int(label) >= reading.base:
            raise MawatamError(
                f"non-digit glue {label!r} at ({edge.x}, {edge.y}, {edge.side})"
            )
        value = value * reading.base + int(label)
    return value


def trajectory_reading(n: int, width: int) -> DigitReading:
    """West-face reading of a trajectory assembly: rows -1..-n, MSB on top."""
    col = -(width - 1)
    edges = tuple(EdgeSite(col, -k, "W") for k in range(1, n + 1))
    return DigitReading(edges=edges, base=3, skip_labels=(S_GLUE,))


def run_collatz(x: int, n: int, return_assembly: bool = False):
    """Assemble n trajectory steps and decode T^n(x) from the west face.

    The seed's width is the step counter, so the construction requires
    n >= bitlen(x); smaller n cannot be expressed with this seed shape
    (each row may perform several T steps but always consumes one column
    per step).  n = 0 is the identity.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if n == 0:
        return (x, None, "") if return_assembly else x
    if n < x.bit_length():
        raise ValueError(
            f"trajectory seeds need n >= bitlen(x); got n={n} < {x.bit_length()}"
        )
    tileset = collatz(extended=True)
    maze = collatz_seed(x, n)
    terminal, report = run_to_terminal(
        Assembly(maze), tileset, max_steps=max(10**6, 4 * n * n)
    )
    if report.nondeterministic:
        raise NondeterminismError(
            f"trajectory assembly nondeterministic at {report.nondet_pos}"
        )
    reading = trajectory_reading(n, max(n, x.bit_length()))
    value = read_digits(terminal, reading, tileset)
    if return_assembly:
        digits = []
        for edge in reading.edges:
            label = glue_at(terminal, edge, tileset)
            if label != S_GLUE:
                digits.append(label)
        text = "".join(digits).lstrip("0") or "0"
        return value, terminal, text
    return value


def powers2_seed(m: int, height: Optional[int] = None) -> Maze:
    """South-west L-shaped seed whose column n assembles 2^n in ternary.

    Vertical arm: ``height`` cells presenting "0" eastward (defaults to m,
    the full square); horizontal arm: a "1" then m-1 "0"s presented
    northward.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    h = m if height is None else height
    cells = set()
    glues = {}
    for j in range(h):
        cells.add((-1, j))
        glues[(-1, j, "E")] = "0"
    for i in range(m):
        cells.add((i, -1))
        glues[(i, -1, "N")] = "1" if i == 0 else "0"
    return Maze(cells=frozenset(cells), glues=glues)


def ternary_digits_needed(n: int) -> int:
    """Digit count of 2^n in base 3."""
    value = 1 << n
    digits = 0
    while value:
        value //= 3
        digits += 1
    return digits


def powers2_column_reading(column: int, height: int) -> DigitReading:
    """Column ``column`` read on east edges, most significant at the top."""
    edges = tuple(EdgeSite(column, j, "E") for j in reversed(range(height)))
    return DigitReading(edges=edges, base=3)


def run_powers2(m: int, height: Optional[int] = None):
    """Assemble the powers-of-2 table; returns (assembly, height used)."""
    h = m if height is None else height
    tileset = collatz()
    terminal, report = run_to_terminal(
        Assembly(powers2_seed(m, h)), tileset, max_steps=max(10**6, 2 * m * h)
    )
    if report.nondeterministic:
        raise NondeterminismError(
            f"powers2 assembly nondeterministic at {report.nondet_pos}"
        )
    return terminal, h


def powers2_column_value(assembly: Assembly, column: int, height: int) -> int:
    return read_digits(assembly, powers2_column_reading(column, height), collatz())


def erdos_scan(n_max: int) -> set:
    """Exponents n <= n_max for which 2^n has no ternary digit 2.

    Computed twice: by reading assembly columns and by big-integer base
    conversion; a disagreement raises.
    """
    if n_max > 10**4:
        raise ValueError("erdos_scan is desk-scale: n_max <= 10^4")
    height = ternary_digits_needed(n_max) + 1
    assembly, h = run_powers2(n_max + 1, height)
    tileset = collatz()
    from_assembly = set()
    for n in range(n_max + 1):
        digits = [
            glue_at(assembly, EdgeSite(n, j, "E"), tileset)
            for j in range(h)
            if (n, j) in assembly.placed
        ]
        if "2" not in digits:
            from_assembly.add(n)
    from_bigint = set()
    for n in range(n_max + 1):
        value = 1 << n
        has_two = False
        while value:
            if value % 3 == 2:
                has_two = True
                break
            value //= 3
        if not has_two:
            from_bigint.add(n)
    if from_assembly != from_bigint:
        raise MawatamError(
            "assembly scan disagrees with base conversion: "
            f"{sorted(from_assembly ^ from_bigint)}"
        )
    return from_assembly


def rectangle_identity(assembly: Assembly, corner, width: int, height: int):
    """Check 3^h * N + E = 2^w * W + S on a fully tiled rectangle.

    ``corner`` is the south-west cell.  N and S are binary (MSB on the
    west); E and W are ternary (MSB on the north).  Returns
    (lhs, rhs, {"N": .., "E": .., "S": .., "W": ..}).
    """
    tileset = collatz()
    x0, y0 = corner
    for x in range(x0, x0 + width):
        for y in range(y0, y0 + height):
            name = assembly.placed.get((x, y))
            if name is None or name not in "012345":
                raise RectNotFullyTiledError(
                    f"cell ({x}, {y}) not tiled with a Collatz base tile"
                )
    top = y0 + height - 1
    east = x0 + width - 1
    n_val = read_digits(
        assembly,
        DigitReading(tuple(EdgeSite(x, top, "N") for x in range(x0, x0 + width)), 2),
        tileset,
    )
    s_val = read_digits(
        assembly,
        DigitReading(tuple(EdgeSite(x, y0, "S") for x in range(x0, x0 + width)), 2),
        tileset,
    )
    e_val = read_digits(
        assembly,
        DigitReading(
            tuple(EdgeSite(east, y, "E") for y in range(top, y0 - 1, -1)), 3
        ),
        tileset,
    )
    w_val = read_digits(
        assembly,
        DigitReading(tuple(EdgeSite(x0, y, "W") for y in range(top, y0 - 1, -1)), 3),
        tileset,
    )
    lhs = 3**height * n_val + e_val
    rhs = 2**width * w_val + s_val
    return lhs, rhs, {"N": n_val, "E": e_val, "S": s_val, "W": w_val}
