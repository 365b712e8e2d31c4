"""Resolver tables, k-resolving set verification and minimisation.

Vertex sets are handled as Python ints used as bitsets over vertex indices.
Each unordered pair ``(u, v)`` with ``u < v`` gets a pair index; the table
stores, per pair, the bitset of vertices resolving it and, per vertex, the
bitset of pairs it resolves. Minimisation treats the problem as set
multicover: every pair must be hit ``k`` times by the chosen vertices.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import DistanceMatrix, Graph, all_pairs_distances

log = logging.getLogger(__name__)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _bool_to_mask(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class ResolverTable:
    n: int
    pairs: tuple[tuple[int, int], ...]
    resolvers: tuple[int, ...]  # per pair: bitset of resolving vertices
    columns: tuple[int, ...]  # per vertex: bitset of pair indices it resolves
    labels: tuple[str, ...] | None = None

    def pair_index(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("a pair needs two distinct vertices")
        if u > v:
            u, v = v, u
        # pairs are enumerated row-major over u < v
        return u * self.n - u * (u + 1) // 2 + (v - u - 1)

    def resolvers_of(self, u: int, v: int) -> frozenset[int]:
        return frozenset(from_mask(self.resolvers[self.pair_index(u, v)]))

    def name(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def resolver_table(dm: DistanceMatrix, labels: Iterable[str] | None = None) -> ResolverTable:
    d = dm.d
    n = d.shape[0]
    pairs = []
    resolvers = []
    columns = [0] * n
    for u in range(n):
        if u + 1 >= n:
            break
        # column u against all later columns at once: differs[w, v] = d[w,u] != d[w,v]
        differs = d[:, u : u + 1] != d[:, u + 1 :]
        for off in range(differs.shape[1]):
            v = u + 1 + off
            pairs.append((u, v))
            resolvers.append(_bool_to_mask(differs[:, off]))
    for p, mask in enumerate(resolvers):
        bit = 1 << p
        for w in from_mask(mask):
            columns[w] |= bit
    return ResolverTable(
        n=n,
        pairs=tuple(pairs),
        resolvers=tuple(resolvers),
        columns=tuple(columns),
        labels=tuple(labels) if labels is not None else None,
    )


def table_for(g: Graph, truncation: int | None = None) -> ResolverTable:
    """Resolver table of a connected graph, labels attached."""
    return resolver_table(all_pairs_distances(g, truncation), g.labels)


@dataclass(frozen=True)
class KResolvingCertificate:
    k: int
    vertices: tuple[int, ...]
    valid: bool
    failing_pair: tuple[int, int] | None = None
    failing_count: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def is_k_resolving(table: ResolverTable, R: Iterable[int], k: int) -> KResolvingCertificate:
    """Check that every pair has at least ``k`` resolvers inside ``R``.

    An invalid certificate names a pair with the fewest resolvers in ``R``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    verts = tuple(sorted(set(R)))
    for v in verts:
        if not 0 <= v < table.n:
            raise ValueError(f"vertex {v} out of range")
    mask = to_mask(verts)
    worst, worst_p = None, None
    for p, res in enumerate(table.resolvers):
        c = (res & mask).bit_count()
        if worst is None or c < worst:
            worst, worst_p = c, p
    if worst is None or worst >= k:
        return KResolvingCertificate(k, verts, True)
    return KResolvingCertificate(k, verts, False, table.pairs[worst_p], worst)


def max_k(table: ResolverTable) -> int:
    """Largest k admitting a k-resolving set (the minimum resolver count)."""
    if table.n < 2:
        raise ValueError("need at least two vertices")
    return min(res.bit_count() for res in table.resolvers)


def forced_vertices(table: ResolverTable, k: int) -> frozenset[int] | None:
    """Vertices every k-resolving set must contain, or ``None`` if none exists."""
    forced = 0
    for res in table.resolvers:
        c = res.bit_count()
        if c < k:
            return None
        if c == k:
            forced |= res
    return frozenset(from_mask(forced))


def greedy_k_resolving(table: ResolverTable, k: int, start: Iterable[int] = ()) -> list[int] | None:
    """Greedy multicover: repeatedly add the vertex hitting most deficient pairs.

    Ties go to the lowest vertex index. ``start`` seeds the chosen set.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if table.n >= 2 and max_k(table) < k:
        return None
    chosen = to_mask(start)
    levels = _deficiency_levels(table, chosen, k)
    while levels[0]:
        best_v, best_gain = -1, 0
        for v in range(table.n):
            if chosen >> v & 1:
                continue
            gain = (table.columns[v] & levels[0]).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen |= 1 << best_v
        levels = _apply(levels, table.columns[best_v])
    return from_mask(chosen)


# Deficiency is kept as k bitsets over pairs: levels[j] holds the pairs
# still needing at least j+1 more resolvers.


def _deficiency_levels(table: ResolverTable, chosen: int, k: int) -> list[int]:
    levels = [0] * k
    for p, res in enumerate(table.resolvers):
        need = k - (res & chosen).bit_count()
        bit = 1 << p
        for j in range(min(need, k)):
            levels[j] |= bit
    return levels


def _apply(levels: list[int], col: int) -> list[int]:
    k = len(levels)
    out = [0] * k
    for j in range(k):
        above = levels[j + 1] if j + 1 < k else 0
        out[j] = (above & col) | (levels[j] & ~col)
    return out


@dataclass(frozen=True)
class SolveResult:
    """Outcome of the exact search.

    ``status`` is ``"optimal"``, ``"incumbent"`` (node budget hit, ``vertices``
    is the best set found) or ``"infeasible"`` (``vertices`` is ``None``).
    """

    k: int
    status: str
    vertices: tuple[int, ...] | None
    nodes_explored: int

    @property
    def size(self) -> int | None:
        return None if self.vertices is None else len(self.vertices)


class _BudgetExceeded(Exception):
    pass


class _Search:
    def __init__(self, table: ResolverTable, k: int, node_budget: int | None, bound: int):
        self.table = table
        self.k = k
        self.budget = node_budget
        self.nodes = 0
        self.best: int | None = None
        self.best_size = bound

    def lower_bound(self, levels: list[int], eligible: int) -> int:
        total = sum(lv.bit_count() for lv in levels)
        if total == 0:
            return 0
        deficient = levels[0]
        gains = sorted(
            ((self.table.columns[v] & deficient).bit_count() for v in from_mask(eligible)),
            reverse=True,
        )
        # largest per-vertex gains first: fewest vertices that could close the gap
        covered = 0
        for i, gain in enumerate(gains):
            if gain == 0:
                break
            covered += gain
            if covered >= total:
                return max(i + 1, self._max_need(levels))
        return len(gains) + 1

    @staticmethod
    def _max_need(levels: list[int]) -> int:
        for j in range(len(levels) - 1, -1, -1):
            if levels[j]:
                return j + 1
        return 0

    def run(self, chosen: int, size: int, levels: list[int], eligible: int) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExceeded
        if not levels[0]:
            if size < self.best_size:
                self.best, self.best_size = chosen, size
            return
        if size + self.lower_bound(levels, eligible) >= self.best_size:
            return
        # fail-first: deficient pair with the least slack between eligible resolvers and need
        resolvers = self.table.resolvers
        pick, pick_cands, pick_slack = -1, 0, None
        rest = levels[0]
        while rest:
            low = rest & -rest
            p = low.bit_length() - 1
            rest ^= low
            need = 1
            for j in range(1, self.k):
                if levels[j] >> p & 1:
                    need = j + 1
                else:
                    break
            cands = resolvers[p] & eligible
            slack = cands.bit_count() - need
            if slack < 0:
                return
            if pick_slack is None or slack < pick_slack:
                pick, pick_cands, pick_slack = p, cands, slack
        for v in from_mask(pick_cands):
            bit = 1 << v
            eligible &= ~bit
            self.run(chosen | bit, size + 1, _apply(levels, self.table.columns[v]), eligible)
            if size + 1 >= self.best_size:
                # siblings add one vertex too and cannot improve
                return


def k_metric_dimension_exact(
    table: ResolverTable,
    k: int,
    node_budget: int | None = None,
    seed: Iterable[int] | None = None,
) -> SolveResult:
    """Minimum k-resolving set by branch-and-bound over the multicover model.

    The search starts from the forced vertices (plus ``seed`` if given, which
    restricts the search to supersets of it), uses the greedy set as the
    initial incumbent, and branches on the most constrained deficient pair,
    trying its eligible resolvers in ascending index order.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    forced = forced_vertices(table, k)
    if forced is None:
        return SolveResult(k, "infeasible", None, 0)
    start = set(forced) | set(seed or ())
    chosen = to_mask(start)
    greedy = greedy_k_resolving(table, k, start)
    assert greedy is not None
    search = _Search(table, k, node_budget, len(greedy))
    search.best = to_mask(greedy)
    eligible = ((1 << table.n) - 1) & ~chosen
    levels = _deficiency_levels(table, chosen, k)
    status = "optimal"
    try:
        search.run(chosen, len(start), levels, eligible)
    except _BudgetExceeded:
        status = "incumbent"
        log.info("node budget %s exhausted, returning incumbent", node_budget)
    return SolveResult(k, status, tuple(from_mask(search.best)), search.nodes)


def brute_force_k_metric_dimension(table: ResolverTable, k: int) -> list[int] | None:
    """Smallest k-resolving set by enumerating subsets in size then lexicographic order."""
    for size in range(table.n + 1):
        for combo in combinations(range(table.n), size):
            mask = to_mask(combo)
            if all((res & mask).bit_count() >= k for res in table.resolvers):
                return list(combo)
    return None
