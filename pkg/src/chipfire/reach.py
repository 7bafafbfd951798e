"""Reachability and debt-reachability decisions.

Debt-reachability is lattice membership: ``to`` is debt-reachable from
``from_`` iff ``from_ - to`` lies in the image of the Laplacian. Classes of
that relation are labelled through the Smith normal form of the reduced
Laplacian (the sandpile group). Legal reachability is decided by greedily
spending the reduced firing vector; a BFS over legal fires is kept as an
independent oracle.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .chip import Config, reduce_firing_vector
from .graph import Graph, reduced_laplacian
from .linalg import smith_normal_form, solve_integer

DEFAULT_MAX_STATES = 10_000_000
DEFAULT_MAX_COMPOSITIONS = 20_000_000


class ResourceLimitError(RuntimeError):
    """A search or enumeration would exceed its configured size cap."""


def max_states() -> int:
    """BFS state cap, overridable with the CHIPFIRE_MAX_STATES env var."""
    raw = os.environ.get("CHIPFIRE_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def debt_reachability_vector(g: Graph, from_: Sequence[int], to: Sequence[int]) -> Config | None:
    """Reduced firing vector x with ``to == from_ - L x``, or None."""
    if len(from_) != g.n or len(to) != g.n:
        raise ValueError("configuration length does not match the graph")
    if sum(from_) != sum(to):
        return None
    omit = g.n - 1
    b = tuple(from_[i] - to[i] for i in range(g.n) if i != omit)
    x_hat = solve_integer(reduced_laplacian(g, omit), b)
    if x_hat is None:
        return None
    return reduce_firing_vector(x_hat + (0,))


def is_debt_reachable(g: Graph, from_: Sequence[int], to: Sequence[int]) -> bool:
    return debt_reachability_vector(g, from_, to) is not None


class ResidueLabeler:
    """Maps configurations to coordinates in the sandpile group.

    With ``S = U L' V`` the Smith form of the reduced Laplacian (last vertex
    omitted), a configuration's label is ``U c_hat`` reduced modulo the
    invariant factors, where ``c_hat`` drops the last entry. Two
    configurations with the same total share a label iff they are mutually
    debt-reachable.
    """

    def __init__(self, g: Graph):
        self.graph = g
        snf = smith_normal_form(reduced_laplacian(g))
        diag = snf.diagonal
        keep = [k for k, d in enumerate(diag) if d > 1]
        self.moduli: tuple[int, ...] = tuple(diag[k] for k in keep)
        # weights[v][k]: contribution of one chip on vertex v to coordinate k
        self.weights: tuple[tuple[int, ...], ...] = tuple(
            tuple(snf.U[k][v] % diag[k] for k in keep) for v in range(g.n - 1)
        ) + (tuple(0 for _ in keep),)

    @property
    def group_order(self) -> int:
        out = 1
        for d in self.moduli:
            out *= d
        return out

    def label(self, c: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * len(self.moduli)
        for v, chips in enumerate(c):
            if chips:
                for k, w in enumerate(self.weights[v]):
                    acc[k] += chips * w
        return tuple(a % d for a, d in zip(acc, self.moduli))


@lru_cache(maxsize=64)
def labeler(g: Graph) -> ResidueLabeler:
    return ResidueLabeler(g)


def residue_label(g: Graph, c: Sequence[int]) -> tuple[int, ...]:
    return labeler(g).label(c)


@dataclass
class BlockPartition:
    c: int
    sizes: dict[tuple[int, ...], int]
    blocks: dict[tuple[int, ...], list[Config]] | None = None

    @property
    def block_count(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


def block_partition(g: Graph, c: int, *, keep_configurations: bool = False,
                    max_compositions: int = DEFAULT_MAX_COMPOSITIONS) -> BlockPartition:
    """Group every configuration with ``c`` chips by residue label."""
    from .enumeration import all_configurations, composition_count

    if c < 0:
        raise ValueError("total chips must be nonnegative")
    if composition_count(g.n, c) > max_compositions:
        raise ResourceLimitError(
            f"{composition_count(g.n, c)} configurations exceed the cap of {max_compositions}")
    lab = labeler(g)
    sizes: dict[tuple[int, ...], int] = {}
    blocks: dict[tuple[int, ...], list[Config]] | None = {} if keep_configurations else None
    for conf in all_configurations(g.n, c):
        key = lab.label(conf)
        sizes[key] = sizes.get(key, 0) + 1
        if blocks is not None:
            blocks.setdefault(key, []).append(conf)
    return BlockPartition(c, sizes, blocks)


@dataclass(frozen=True)
class MostFiredResult:
    configuration: Config
    remaining: Config

    @property
    def exhausted(self) -> bool:
        return not any(self.remaining)


def most_fired(g: Graph, from_: Sequence[int], budget: Sequence[int],
               order: Sequence[int] | None = None) -> MostFiredResult:
    """Fire budgeted vertices legally until every budgeted vertex is stuck.

    The lowest-index eligible vertex is fired first, unless ``order`` gives
    a different priority. The outcome does not depend on the order.
    """
    if any(b < 0 for b in budget):
        raise ValueError("budget entries must be nonnegative")
    chips = list(from_)
    left = list(budget)
    deg, nbrs = g.degrees, g.neighbors
    priority = range(g.n) if order is None else order
    while True:
        for v in priority:
            if left[v] and chips[v] >= deg[v]:
                # fire as often as the budget and chip count allow in one step
                k = min(left[v], chips[v] // deg[v])
                chips[v] -= k * deg[v]
                for w in nbrs[v]:
                    chips[w] += k
                left[v] -= k
                break
        else:
            return MostFiredResult(tuple(chips), tuple(left))


def is_reachable(g: Graph, from_: Sequence[int], to: Sequence[int]) -> bool:
    """Decide legal reachability without searching.

    A reachable target is attained by firing exactly its reduced firing
    vector, in any greedy order, so it suffices to spend that vector and
    check nothing is left over.
    """
    x = debt_reachability_vector(g, from_, to)
    if x is None:
        return False
    return most_fired(g, from_, x).exhausted


def _legal_successors(g: Graph, c: Config) -> Iterator[Config]:
    deg, nbrs = g.degrees, g.neighbors
    for v in range(g.n):
        if c[v] >= deg[v]:
            out = list(c)
            out[v] -= deg[v]
            for w in nbrs[v]:
                out[w] += 1
            yield tuple(out)


def reachable_set(g: Graph, from_: Sequence[int], limit: int | None = None) -> set[Config]:
    """All configurations reachable by legal fires, including ``from_``."""
    if limit is None:
        limit = max_states()
    start = tuple(from_)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in _legal_successors(g, queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise ResourceLimitError(f"BFS exceeded {limit} states")
                queue.append(nxt)
    return seen


def is_reachable_bfs(g: Graph, from_: Sequence[int], to: Sequence[int],
                     limit: int | None = None) -> bool:
    if limit is None:
        limit = max_states()
    start, target = tuple(from_), tuple(to)
    if sum(start) != sum(target):
        return False
    if start == target:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in _legal_successors(g, queue.popleft()):
            if nxt == target:
                return True
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise ResourceLimitError(f"BFS exceeded {limit} states")
                queue.append(nxt)
    return False

