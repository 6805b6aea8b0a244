"""Plain-text wire diagrams and weight sparklines."""

from __future__ import annotations

from typing import Sequence

from .gf2 import Circuit

CONTROL = "●"
TARGET = "⊕"
CROSSING = "|"
WIRE = "─"
_SPARK = "▁▂▃▄▅▆▇█"


def render_circuit(c: Circuit) -> str:
    """One text row per wire, one 3-character column per gate."""
    label_width = len(str(c.n))
    rows = [[f"q{i + 1:<{label_width}} ", WIRE] for i in range(c.n)]
    for g in c.gates:
        lo, hi = sorted((g.control, g.target))
        for wire in range(1, c.n + 1):
            if wire == g.control:
                mark = CONTROL
            elif wire == g.target:
                mark = TARGET
            elif lo < wire < hi:
                mark = CROSSING
            else:
                mark = WIRE
            rows[wire - 1].append(WIRE + mark + WIRE)
    for row in rows:
        row.append(WIRE)
    return "\n".join("".join(row) for row in rows)


def sparkline(values: Sequence[int], top: int) -> str:
    if top <= 0:
        return _SPARK[0] * len(values)
    return "".join(_SPARK[round(v * (len(_SPARK) - 1) / top)] for v in values)
