"""Chip configurations and firing moves.

Configurations and firing vectors are plain tuples of ints: equality and
hashing are entry-wise, which is what the BFS visited sets need. A
configuration is "general" when entries may be negative.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph

Config = tuple[int, ...]


class IllegalMoveError(ValueError):
    """A legal-mode fire was requested at a vertex holding fewer chips than its degree."""


def parse_configuration(text: str, *, allow_negative: bool = False) -> Config:
    """Parse the comma-separated CLI form, e.g. ``"4,0,0,0"``."""
    try:
        chips = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad configuration {text!r}: expected comma-separated integers") from None
    if not allow_negative and any(v < 0 for v in chips):
        raise ValueError(f"configuration {text!r} has negative entries")
    return chips


def format_configuration(c: Sequence[int]) -> str:
    return ",".join(str(v) for v in c)


def check_configuration(g: Graph, c: Sequence[int], *, general: bool = False) -> Config:
    c = tuple(c)
    if len(c) != g.n:
        raise ValueError(f"configuration has {len(c)} entries, graph has {g.n} vertices")
    if not general and any(v < 0 for v in c):
        raise ValueError(f"configuration {c} is in debt")
    return c


def in_debt(c: Sequence[int]) -> bool:
    return any(v < 0 for v in c)


def point_configuration(n: int, c: int, vertex: int = 0) -> Config:
    """``c`` chips on ``vertex`` and none elsewhere."""
    chips = [0] * n
    chips[vertex] = c
    return tuple(chips)


def can_fire(g: Graph, c: Sequence[int], v: int) -> bool:
    return c[v] >= g.degrees[v]


def fire(g: Graph, c: Sequence[int], v: int, mode: str = "legal") -> Config:
    if mode not in ("legal", "general"):
        raise ValueError(f"unknown firing mode {mode!r}")
    if mode == "legal" and c[v] < g.degrees[v]:
        raise IllegalMoveError(f"vertex {v} holds {c[v]} chips, degree {g.degrees[v]}")
    out = list(c)
    out[v] -= g.degrees[v]
    for w in g.neighbors[v]:
        out[w] += 1
    return tuple(out)


def apply_firing_vector(g: Graph, c: Sequence[int], x: Sequence[int]) -> Config:
    """``c - L x``: fire vertex i ``x[i]`` times (negative means un-fire)."""
    out = list(c)
    for v, k in enumerate(x):
        if k:
            out[v] -= k * g.degrees[v]
            for w in g.neighbors[v]:
                out[w] += k
    return tuple(out)


def reduce_firing_vector(x: Sequence[int]) -> Config:
    m = min(x)
    return tuple(v - m for v in x)
