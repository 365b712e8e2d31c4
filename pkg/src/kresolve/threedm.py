"""3-dimensional k-matching instances and the reduction 3DM -> 3DkM.

Elements are 1-based indices into each of A, B and C. Triple lists are
multisets: duplicates are kept and told apart by their 1-based position.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

Triple = tuple[int, int, int]

AB, BC, CA = "AB", "BC", "CA"


class ScaleGuardExceeded(RuntimeError):
    """A brute-force search hit its configured node limit."""


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class TripleSystem:
    n: int
    triples: tuple[Triple, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        for pos, t in enumerate(self.triples, 1):
            if len(t) != 3 or not all(1 <= x <= self.n for x in t):
                raise ValueError(f"triple {pos} {t} has an index outside [1, {self.n}]")

    @property
    def m(self) -> int:
        return len(self.triples)

    def triple(self, position: int) -> Triple:
        """Triple at 1-based ``position``."""
        return self.triples[position - 1]


@dataclass(frozen=True)
class Matching:
    """Selected 1-based triple positions, sorted, and the multiplicity ``k``."""

    positions: tuple[int, ...]
    k: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(sorted(self.positions)))
        if len(set(self.positions)) != len(self.positions):
            raise MatchingError("matching positions must be distinct")


@dataclass(frozen=True)
class MatchingCheck:
    valid: bool
    element: str | None = None  # e.g. "a1"
    count: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def _coverage(sys: TripleSystem, positions: Iterable[int]) -> list[list[int]]:
    cov = [[0] * (sys.n + 1) for _ in range(3)]
    for pos in positions:
        if not 1 <= pos <= sys.m:
            raise MatchingError(f"position {pos} outside [1, {sys.m}]")
        for axis, x in enumerate(sys.triple(pos)):
            cov[axis][x] += 1
    return cov


def verify_k_matching(sys: TripleSystem, m: Matching) -> MatchingCheck:
    """Check every element of A, B, C is covered exactly ``m.k`` times.

    The first offending element in order a1..an, b1..bn, c1..cn is reported.
    """
    cov = _coverage(sys, m.positions)
    for axis, name in enumerate("abc"):
        for x in range(1, sys.n + 1):
            if cov[axis][x] != m.k:
                return MatchingCheck(False, f"{name}{x}", cov[axis][x])
    if len(m.positions) != m.k * sys.n:
        # unreachable when coverage is exact, kept as a guard for n == 0
        return MatchingCheck(False, None, len(m.positions))
    return MatchingCheck(True)


def find_k_matching(sys: TripleSystem, k: int, max_nodes: int = 2_000_000) -> Matching | None:
    """Lexicographically smallest k-matching by position, or ``None``.

    Depth-first over positions, trying "include" before "exclude", pruned
    by per-element coverage caps and by the triples still available.
    Raises :class:`ScaleGuardExceeded` after ``max_nodes`` search nodes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = sys.n
    elems = [(a - 1, n + b - 1, 2 * n + c - 1) for a, b, c in sys.triples]
    cov = [0] * (3 * n)
    remaining = [0] * (3 * n)
    for t in elems:
        for e in t:
            remaining[e] += 1
    if any(r < k for r in remaining):
        return None
    chosen: list[int] = []
    nodes = 0
    m = len(elems)

    def dfs(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ScaleGuardExceeded(f"find_k_matching exceeded {max_nodes} nodes")
        if i == m:
            return all(c == k for c in cov)
        t = elems[i]
        for e in t:
            remaining[e] -= 1
        ok = False
        if all(cov[e] < k for e in t):
            for e in t:
                cov[e] += 1
            chosen.append(i + 1)
            ok = dfs(i + 1)
            if not ok:
                chosen.pop()
                for e in t:
                    cov[e] -= 1
        if not ok and all(cov[e] + remaining[e] >= k for e in t):
            ok = dfs(i + 1)
        for e in t:
            remaining[e] += 1
        return ok

    if n == 0:
        return Matching((), k)
    if dfs(0):
        return Matching(tuple(chosen), k)
    return None


def pad_to_multiple(sys: TripleSystem, k: int) -> tuple[TripleSystem, int]:
    """Append ``t = (-n) mod (k-1)`` fresh elements per side, each with its own triple."""
    if k < 2:
        raise ValueError("k must be at least 2")
    t = (-sys.n) % (k - 1)
    extra = tuple((sys.n + i, sys.n + i, sys.n + i) for i in range(1, t + 1))
    return TripleSystem(sys.n + t, sys.triples + extra), t


def build_R(n: int) -> list[Triple]:
    return [(i, i, i) for i in range(n + 1, 3 * n + 1)]


def build_T_pq(p: int, q: int) -> list[tuple[str, int, int]]:
    """The ``3q^2`` pair tuples of one block, tagged with the sides they join.

    ``(AB, i, j)`` stands for ``(a_i, b_j)``, ``(BC, i, j)`` for ``(b_i, c_j)``
    and ``(CA, i, j)`` for ``(c_i, a_j)``, with ``i`` in ``p..p+q-1`` and ``j``
    in ``p+q..p+2q-1``.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    rows = range(p, p + q)
    cols = range(p + q, p + 2 * q)
    return [(tag, i, j) for tag in (AB, BC, CA) for i in rows for j in cols]


def _check_divisible(n: int, k: int) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")
    if n % (k - 1):
        raise ValueError(f"n={n} is not a multiple of k-1={k - 1}")


def build_T_prime(n: int, k: int) -> list[tuple[str, int, int]]:
    _check_divisible(n, k)
    q = k - 1
    out = []
    for i in range(n // q):
        out.extend(build_T_pq(n + 1 + 2 * q * i, q))
    return out


def build_T(n: int, k: int) -> list[Triple]:
    """Complete each tuple of ``build_T_prime`` with one original element.

    Tuples missing the same side are taken in construction order; original
    element ``e`` completes the ``k-1`` consecutive ones at slots
    ``(e-1)(k-1) .. e(k-1)-1``.
    """
    q = k - 1
    tuples = build_T_prime(n, k)
    seen = {AB: 0, BC: 0, CA: 0}
    out = []
    for tag, i, j in tuples:
        e = seen[tag] // q + 1
        seen[tag] += 1
        if tag == AB:
            out.append((i, j, e))
        elif tag == BC:
            out.append((e, i, j))
        else:
            out.append((j, e, i))
    return out


@dataclass(frozen=True)
class Reduction:
    """A 3DM -> 3DkM reduction: source, padded source, target and segment layout.

    ``segments`` maps ``"S"``, ``"pad"``, ``"R"``, ``"T"`` to 1-based inclusive
    position ranges in ``reduced.triples`` (an empty range is ``(lo, lo-1)``).
    """

    k: int
    source: TripleSystem
    padded: TripleSystem
    reduced: TripleSystem
    segments: dict[str, tuple[int, int]]

    def segment(self, name: str) -> range:
        lo, hi = self.segments[name]
        return range(lo, hi + 1)


def reduce_3dm_to_3dkm(sys: TripleSystem, k: int) -> Reduction:
    padded, t = pad_to_multiple(sys, k)
    n = padded.n
    R = build_R(n)
    T = build_T(n, k)
    triples = padded.triples + tuple(R) + tuple(T)
    bounds = {}
    lo = 1
    for name, size in (("S", sys.m), ("pad", t), ("R", len(R)), ("T", len(T))):
        bounds[name] = (lo, lo + size - 1)
        lo += size
    return Reduction(k, sys, padded, TripleSystem(3 * n, triples), bounds)


def lift_matching(m: Matching, red: Reduction) -> Matching:
    """Extend a 1-matching of the source by the pad, R and T segments."""
    if m.k != 1 or not verify_k_matching(red.source, m):
        raise MatchingError("input is not a valid 1-matching of the source system")
    extra = [*red.segment("pad"), *red.segment("R"), *red.segment("T")]
    return Matching(m.positions + tuple(extra), red.k)


def project_matching(m: Matching, red: Reduction) -> Matching:
    """Drop the R and T positions from a k-matching of the reduced system.

    The result is a 1-matching of the padded source (it keeps the pad triples);
    see :func:`strip_padding` for the source matching itself.
    """
    if m.k != red.k or not verify_k_matching(red.reduced, m):
        raise MatchingError("input is not a valid k-matching of the reduced system")
    keep = set(red.segment("S")) | set(red.segment("pad"))
    return Matching(tuple(p for p in m.positions if p in keep), 1)


def strip_padding(m: Matching, red: Reduction) -> Matching:
    keep = set(red.segment("S"))
    return Matching(tuple(p for p in m.positions if p in keep), m.k)


def coverage_counts(triples: Sequence[Triple], n: int) -> dict[str, int]:
    """Occurrences of each element label (``a1``, ``b7``, ...) over ``triples``."""
    counts = {f"{s}{i}": 0 for s in "abc" for i in range(1, n + 1)}
    for t in triples:
        for s, x in zip("abc", t):
            counts[f"{s}{x}"] += 1
    return counts
