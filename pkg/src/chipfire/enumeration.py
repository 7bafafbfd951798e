"""Counting debt-reachable and reachable configurations.

Two independent routes count the debt-reachable set: filtering all
configurations by residue label, and counting lattice points of the
simplex of firing vectors that keep every vertex out of debt.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .chip import Config, point_configuration
from .graph import Graph, laplacian
from .linalg import adjugate, exact_determinant
from .reach import (DEFAULT_MAX_COMPOSITIONS, ResourceLimitError, block_partition, labeler,
                    reachable_set)

MODES = ("debt", "reachable", "blocks")


def composition_count(n: int, c: int) -> int:
    return math.comb(c + n - 1, n - 1)


def all_configurations(n: int, c: int) -> Iterator[Config]:
    """Weak compositions of ``c`` into ``n`` parts in lexicographically decreasing order.

    >>> list(all_configurations(2, 3))
    [(3, 0), (2, 1), (1, 2), (0, 3)]
    """
    if n < 1 or c < 0:
        raise ValueError("need n >= 1 and c >= 0")
    if n == 1:
        yield (c,)
        return
    for first in range(c, -1, -1):
        for rest in all_configurations(n - 1, c - first):
            yield (first,) + rest


def _debt_class(g: Graph, from_: Sequence[int]) -> Iterator[Config]:
    # Walks compositions vertex by vertex, carrying the partial label so the
    # per-configuration work is one vector add.
    lab = labeler(g)
    target = lab.label(from_)
    mods, weights = lab.moduli, lab.weights
    n, total = g.n, sum(from_)
    zero = tuple(0 for _ in mods)

    def rec(v: int, left: int, acc: tuple[int, ...], prefix: tuple[int, ...]):
        if v == n - 1:
            # the last vertex has zero weight
            if acc == target:
                yield prefix + (left,)
            return
        w = weights[v]
        for k in range(left + 1):
            yield from rec(v + 1, left - k, acc, prefix + (k,))
            acc = tuple((a + b) % d for a, b, d in zip(acc, w, mods))

    yield from rec(0, total, zero, ())


def debt_reachable_configurations(g: Graph, from_: Sequence[int]) -> Iterator[Config]:
    """Stream every configuration debt-reachable from ``from_``."""
    return _debt_class(g, tuple(from_))


def count_debt_reachable(g: Graph, from_: Sequence[int],
                         max_compositions: int = DEFAULT_MAX_COMPOSITIONS) -> int:
    if len(from_) != g.n or any(v < 0 for v in from_):
        raise ValueError("source must be a nonnegative configuration on the graph")
    size = composition_count(g.n, sum(from_))
    if size > max_compositions:
        raise ResourceLimitError(f"{size} configurations exceed the cap of {max_compositions}")
    return sum(1 for _ in _debt_class(g, tuple(from_)))


def count_reachable(g: Graph, from_: Sequence[int], limit: int | None = None) -> int:
    if len(from_) != g.n or any(v < 0 for v in from_):
        raise ValueError("source must be a nonnegative configuration on the graph")
    return len(reachable_set(g, from_, limit))


@dataclass(frozen=True)
class SimplexSpec:
    """Firing vectors x (last coordinate 0) with ``source_config - L x >= 0``.

    ``rows[i]`` holds the coefficients of constraint i on the n-1 free
    coordinates; the constraint reads ``constants[i] + rows[i] . x >= 0``.
    Only the source row has a nonzero constant.
    """

    rows: tuple[tuple[int, ...], ...]
    constants: tuple[int, ...]
    source: int
    c: int

    @property
    def dimension(self) -> int:
        return len(self.rows[0])

    def contains(self, x: Sequence[int]) -> bool:
        return all(k + sum(a * v for a, v in zip(row, x)) >= 0
                   for row, k in zip(self.rows, self.constants))

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Origin plus one vertex per dropped homogeneous constraint."""
        dim = self.dimension
        out = [tuple(Fraction(0) for _ in range(dim))]
        for drop in range(len(self.rows)):
            if drop == self.source:
                continue
            sub = [r for i, r in enumerate(self.rows) if i != drop]
            rhs = [-k for i, k in enumerate(self.constants) if i != drop]
            det = exact_determinant(sub)
            if det == 0:
                raise ArithmeticError("degenerate simplex: region is unbounded")
            adj = adjugate(sub)
            out.append(tuple(Fraction(sum(a * b for a, b in zip(row, rhs)), det) for row in adj))
        return out


def simplex_spec(g: Graph, source: int, c: int) -> SimplexSpec:
    L = laplacian(g)
    rows = tuple(tuple(-L[i][j] for j in range(g.n - 1)) for i in range(g.n))
    constants = tuple(c if i == source else 0 for i in range(g.n))
    return SimplexSpec(rows, constants, source, c)


def simplex_lattice_count(g: Graph, source: int, c: int) -> int:
    """Lattice points of the firing-vector simplex, by bounded recursive search."""
    if c < 0:
        raise ValueError("c must be nonnegative")
    spec = simplex_spec(g, source, c)
    verts = spec.vertices()
    dim = spec.dimension
    lo = [math.ceil(min(v[k] for v in verts)) for k in range(dim)]
    hi = [math.floor(max(v[k] for v in verts)) for k in range(dim)]
    # a constraint can be checked once its last nonzero coordinate is fixed
    ready: list[list[int]] = [[] for _ in range(dim)]
    for i, row in enumerate(spec.rows):
        nz = [k for k, a in enumerate(row) if a]
        ready[max(nz) if nz else 0].append(i)

    x = [0] * dim

    def ok(k: int) -> bool:
        for i in ready[k]:
            row = spec.rows[i]
            if spec.constants[i] + sum(row[j] * x[j] for j in range(k + 1)) < 0:
                return False
        return True

    def rec(k: int) -> int:
        total = 0
        for v in range(lo[k], hi[k] + 1):
            x[k] = v
            if ok(k):
                total += 1 if k == dim - 1 else rec(k + 1)
        return total

    return rec(0)


@dataclass(frozen=True)
class SweepRecord:
    c: int
    debt_count: int | None = None
    reachable_count: int | None = None
    block_count: int | None = None
    seconds: float = 0.0


def sweep_one(g: Graph, source: int, c: int, modes: Iterable[str]) -> SweepRecord:
    modes = set(modes)
    start = time.perf_counter()
    conf = point_configuration(g.n, c, source)
    debt = count_debt_reachable(g, conf) if "debt" in modes else None
    reach = count_reachable(g, conf) if "reachable" in modes else None
    blocks = block_partition(g, c).block_count if "blocks" in modes else None
    return SweepRecord(c, debt, reach, blocks, time.perf_counter() - start)


def _sweep_task(args):
    return sweep_one(*args)


def sweep(g: Graph, source: int, c_min: int, c_max: int, modes: Iterable[str] = ("debt",),
          jobs: int = 1) -> list[SweepRecord]:
    """One record per c in ``c_min..c_max``, in c order regardless of ``jobs``."""
    modes = tuple(sorted(set(modes)))
    unknown = set(modes) - set(MODES)
    if unknown:
        raise ValueError(f"unknown sweep modes: {sorted(unknown)}")
    if c_min > c_max or c_min < 0:
        raise ValueError(f"empty or negative range {c_min}..{c_max}")
    if not 0 <= source < g.n:
        raise ValueError(f"source vertex {source} out of range")
    tasks = [(g, source, c, modes) for c in range(c_min, c_max + 1)]
    if jobs <= 1 or len(tasks) == 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_task, tasks))
