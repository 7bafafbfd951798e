"""Simple connected undirected graphs and their Laplacian matrices.

Vertices are 0-indexed everywhere. Matrices are tuples of tuples of Python
ints so they are hashable, immutable and exact.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .linalg import exact_determinant

IntMatrix = tuple[tuple[int, ...], ...]


class GraphError(ValueError):
    """Raised for invalid graph descriptions."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[frozenset[int]]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise GraphError(f"graph needs at least 2 vertices, got n={self.n}")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"loop or malformed edge: {sorted(e)}")
            for v in e:
                if not 0 <= v < self.n:
                    raise GraphError(f"edge {sorted(e)} has vertex outside 0..{self.n - 1}")
        if not self._connected():
            raise GraphError("graph is disconnected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        """Build a graph, rejecting loops and repeated edges."""
        seen: set[frozenset[int]] = set()
        for i, j in edges:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            e = frozenset((i, j))
            if e in seen:
                raise GraphError(f"duplicate edge {sorted(e)}")
            seen.add(e)
        return cls(n, frozenset(seen), name)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            i, j = sorted(e)
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def _connected(self) -> bool:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            i, j = tuple(e)
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edge_list()]})

    def __repr__(self) -> str:
        label = self.name or f"n={self.n}"
        return f"Graph({label}, edges={self.edge_list()})"


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle:{n}")


def make_path(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"path needs n >= 2, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def make_complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2), f"complete:{n}")


def parse_graph(document: bytes | str) -> Graph:
    """Parse the JSON form ``{"n": N, "edges": [[i, j], ...]}``."""
    try:
        data = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphError('graph document must be an object with "n" and "edges"')
    n, edges = data["n"], data["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError('"n" must be an integer')
    if not isinstance(edges, list):
        raise GraphError('"edges" must be a list')
    pairs = []
    for e in edges:
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
            raise GraphError(f"malformed edge {e!r}")
        pairs.append((e[0], e[1]))
    if n < 2:
        raise GraphError(f"graph needs at least 2 vertices, got n={n}")
    return Graph.from_edges(n, pairs)


_FAMILIES = {"cycle": make_cycle, "path": make_path, "complete": make_complete}


def graph_from_spec(spec: str) -> Graph:
    """Resolve CLI shorthand: ``cycle:N``, ``path:N``, ``complete:N`` or ``file:PATH``."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GraphError(f"graph spec must look like KIND:ARG, got {spec!r}")
    if kind == "file":
        try:
            g = parse_graph(Path(arg).read_bytes())
        except OSError as exc:
            raise GraphError(f"cannot read graph file: {exc}") from None
        return Graph(g.n, g.edges, spec)
    if kind not in _FAMILIES:
        raise GraphError(f"unknown graph family {kind!r}")
    try:
        n = int(arg)
    except ValueError:
        raise GraphError(f"bad vertex count {arg!r}") from None
    return _FAMILIES[kind](n)


def laplacian(g: Graph) -> IntMatrix:
    rows = []
    for i in range(g.n):
        row = [0] * g.n
        row[i] = g.degrees[i]
        for j in g.neighbors[i]:
            row[j] = -1
        rows.append(tuple(row))
    return tuple(rows)


def reduced_laplacian(g: Graph, omit: int | None = None) -> IntMatrix:
    """Laplacian with row and column ``omit`` deleted (default: last vertex)."""
    if omit is None:
        omit = g.n - 1
    if not 0 <= omit < g.n:
        raise IndexError(f"omit={omit} out of range for n={g.n}")
    L = laplacian(g)
    return tuple(
        tuple(v for j, v in enumerate(row) if j != omit)
        for i, row in enumerate(L) if i != omit
    )


def spanning_tree_count(g: Graph, omit: int | None = None) -> int:
    return abs(exact_determinant(reduced_laplacian(g, omit)))


def random_connected_graph(n: int, rng: random.Random, extra_edge_prob: float = 0.4) -> Graph:
    """Random spanning tree plus independent extra edges; always connected."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {frozenset((order[i], order[rng.randrange(i)])) for i in range(1, n)}
    for i, j in combinations(range(n), 2):
        if frozenset((i, j)) not in edges and rng.random() < extra_edge_prob:
            edges.add(frozenset((i, j)))
    return Graph(n, frozenset(edges), f"random:{n}")
