"""Labeled undirected graphs, BFS distances and structural predicates."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np


class GraphError(ValueError):
    """Malformed graph input."""


class DisconnectedGraphError(GraphError):
    """Raised by distance-based operations on a disconnected graph.

    ``witness`` holds two labels lying in different components.
    """

    def __init__(self, u: str, v: str):
        super().__init__(f"graph is disconnected: no path between {u!r} and {v!r}")
        self.witness = (u, v)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph over dense indices ``0..n-1``.

    ``labels[i]`` is the human-readable name of vertex ``i``;
    ``adjacency[i]`` is the sorted tuple of neighbours of ``i``.
    """

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as index pairs ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def vid(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def ids(self, labels: Iterable[str]) -> list[int]:
        return [self.vid(lab) for lab in labels]

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in ids]

    def without_edge(self, u: str, v: str) -> Graph:
        """Copy of the graph with edge ``{u, v}`` removed."""
        iu, iv = self.vid(u), self.vid(v)
        if not self.has_edge(iu, iv):
            raise GraphError(f"no edge between {u!r} and {v!r}")
        adj = [list(nb) for nb in self.adjacency]
        adj[iu].remove(iv)
        adj[iv].remove(iu)
        return Graph(self.labels, tuple(tuple(nb) for nb in adj))


def build_graph(labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> Graph:
    """Build a graph from vertex labels and label pairs; repeated edges collapse."""
    labels = tuple(labels)
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise GraphError(f"duplicate vertex label {lab!r}")
        index[lab] = i
    nbrs: list[set[int]] = [set() for _ in labels]
    for u, v in edges:
        if u not in index:
            raise GraphError(f"unknown vertex label {u!r}")
        if v not in index:
            raise GraphError(f"unknown vertex label {v!r}")
        if u == v:
            raise GraphError(f"self-loop at {u!r}")
        iu, iv = index[u], index[v]
        nbrs[iu].add(iv)
        nbrs[iv].add(iu)
    return Graph(labels, tuple(tuple(sorted(nb)) for nb in nbrs))


def bfs(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        comp = [i for i, d in enumerate(bfs(g, s)) if d >= 0]
        for i in comp:
            seen[i] = True
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def require_connected(g: Graph) -> None:
    comps = components(g)
    if len(comps) > 1:
        raise DisconnectedGraphError(g.labels[comps[0][0]], g.labels[comps[1][0]])


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; entries are capped at ``truncation`` when set."""

    d: np.ndarray
    truncation: int | None = None

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __call__(self, u: int, v: int) -> int:
        return int(self.d[u, v])


def all_pairs_distances(g: Graph, truncation: int | None = None) -> DistanceMatrix:
    """BFS from every vertex. Raises :class:`DisconnectedGraphError` if ``g`` is disconnected."""
    if truncation is not None and truncation < 1:
        raise ValueError("truncation must be a positive integer")
    n = g.vertex_count
    d = np.zeros((n, n), dtype=np.int32)
    for s in range(n):
        row = bfs(g, s)
        if min(row, default=0) < 0:
            t = row.index(-1)
            raise DisconnectedGraphError(g.labels[s], g.labels[t])
        d[s] = row
    if truncation is not None:
        np.minimum(d, truncation, out=d)
    d.setflags(write=False)
    return DistanceMatrix(d, truncation)


@dataclass(frozen=True)
class Bipartition:
    """Result of a bipartiteness test.

    Exactly one of ``coloring`` (a 0/1 colour per vertex) and ``odd_cycle``
    (a closed walk of vertex indices, first vertex not repeated) is set.
    """

    bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(g: Graph) -> Bipartition:
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return Bipartition(False, odd_cycle=_odd_cycle(parent, u, w))
    return Bipartition(True, coloring=tuple(color))


def _odd_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    # u and w are BFS-tree siblings in depth; join their root paths at the LCA
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] >= 0:
        path_w.append(parent[path_w[-1]])
    on_w = set(path_w)
    lca = next(x for x in path_u if x in on_w)
    left = path_u[: path_u.index(lca) + 1]
    right = path_w[: path_w.index(lca)]
    return tuple(left + right[::-1])


def diameter(g: Graph) -> int:
    if g.vertex_count == 0:
        return 0
    return int(all_pairs_distances(g).d.max())
