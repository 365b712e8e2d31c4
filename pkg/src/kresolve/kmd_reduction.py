"""Bipartite graph construction reducing 3D(k-1)M to k-metric dimension.

Vertex labels follow a fixed grammar so that every vertex is
self-describing: ``a:i``, ``b:i``, ``c:i`` (``0 <= i <= n``), ``s:j``
(``1 <= j <= m``), ``v0``, ``vA``, ``vB``, ``vC``, ``d:i`` (``1 <= i <= m'``)
and ``leg:<root>:<leg 1|2>:<position>`` with position 1 next to the root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import DisconnectedGraphError, Graph, all_pairs_distances, build_graph, is_bipartite
from .resolving import resolver_table, to_mask
from .threedm import Matching, TripleSystem, verify_k_matching

CORE_ROOTS = ("vA", "vB", "vC", "v0")


class WitnessRejected(ValueError):
    """A vertex set does not decode to a (k-1)-matching."""


def index_bits(j: int, m_prime: int) -> list[int]:
    """Binary digits of ``j``, least significant first, padded to ``m_prime``."""
    if j < 0 or j >= 1 << m_prime:
        raise ValueError(f"{j} does not fit in {m_prime} bits")
    return [(j >> i) & 1 for i in range(m_prime)]


def bit_count_for(m: int) -> int:
    """Number of bit vertices so that indices ``1..m`` get distinct patterns."""
    return m.bit_length()


def leg_lengths(k: int) -> tuple[int, int]:
    return (k + 1) // 2, k // 2


@dataclass(frozen=True)
class ReductionGraph:
    graph: Graph
    k: int
    n: int
    m: int
    m_prime: int
    roots: tuple[str, ...]
    legs: dict[str, tuple[str, ...]]
    x: int
    source: TripleSystem
    leg_set: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "leg_set", frozenset(v for vs in self.legs.values() for v in vs))

    def leg_vertices(self) -> list[str]:
        return [v for r in self.roots for v in self.legs[r]]

    def expected_vertex_count(self) -> int:
        return 3 * (self.n + 1) + self.m + 4 + self.m_prime + (4 + self.m_prime) * self.k

    def expected_edge_count(self) -> int:
        bit_edges = sum(j.bit_count() for j in range(1, self.m + 1))
        return (
            6 * (self.n + 1)
            + 3 * self.m
            + self.m_prime
            + bit_edges
            + (4 + self.m_prime) * self.k
        )

    @property
    def claimed_diameter(self) -> int:
        return 2 * ((self.k + 1) // 2) + 3


def target_size(n: int, k: int, m_prime: int) -> int:
    return (4 + m_prime) * k + 3 + (k - 1) * n


def build_kmd_instance(sys: TripleSystem, k: int) -> ReductionGraph:
    """Build the leg-gadget graph and target size ``x`` for a 3D(k-1)M instance.

    Requires ``k >= 2`` and ``n > k``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if sys.n <= k:
        raise ValueError(
            f"construction needs n > k (got n={sys.n}, k={k}); pad the triple "
            "system with extra matched blocks first"
        )
    n, m = sys.n, sys.m
    mp = bit_count_for(m)
    labels: list[str] = []
    edges: list[tuple[str, str]] = []
    sides = (("a", "vA"), ("b", "vB"), ("c", "vC"))
    for s, _ in sides:
        labels.extend(f"{s}:{i}" for i in range(n + 1))
    labels.extend(f"s:{j}" for j in range(1, m + 1))
    labels.extend(CORE_ROOTS)
    bits = [f"d:{i}" for i in range(1, mp + 1)]
    labels.extend(bits)

    for axis, (s, hub) in enumerate(sides):
        for i in range(n + 1):
            edges.append((f"{s}:{i}", hub))
            edges.append((f"{s}:{i}", "v0"))
        for j, t in enumerate(sys.triples, 1):
            edges.append((f"{s}:{t[axis]}", f"s:{j}"))
    for i, d in enumerate(bits):
        edges.append((d, "v0"))
        for j in range(1, m + 1):
            if j >> i & 1:
                edges.append((d, f"s:{j}"))

    roots = CORE_ROOTS + tuple(bits)
    legs: dict[str, tuple[str, ...]] = {}
    for r in roots:
        members = []
        for leg_no, length in enumerate(leg_lengths(k), 1):
            prev = r
            for pos in range(1, length + 1):
                v = f"leg:{r}:{leg_no}:{pos}"
                members.append(v)
                edges.append((prev, v))
                prev = v
        labels.extend(members)
        legs[r] = tuple(members)

    return ReductionGraph(
        graph=build_graph(labels, edges),
        k=k,
        n=n,
        m=m,
        m_prime=mp,
        roots=roots,
        legs=legs,
        x=target_size(n, k, mp),
        source=sys,
    )


def witness_forward(rg: ReductionGraph, m: Matching) -> tuple[str, ...]:
    """Legs, ``a:0``, ``b:0``, ``c:0`` and the selected triple vertices, in vertex order."""
    if m.k != rg.k - 1 or not verify_k_matching(rg.source, m):
        raise ValueError(f"not a valid {rg.k - 1}-matching of the source system")
    chosen = set(rg.leg_set) | {"a:0", "b:0", "c:0"} | {f"s:{j}" for j in m.positions}
    g = rg.graph
    return tuple(g.labels[i] for i in sorted(g.vid(v) for v in chosen))


def witness_backward(rg: ReductionGraph, R) -> Matching:
    """Read the triple vertices of ``R`` back as a (k-1)-matching.

    Raises :class:`WitnessRejected` when ``R`` misses a leg vertex or its
    triple vertices do not form a (k-1)-matching.
    """
    R = set(R)
    if not rg.leg_set <= R:
        raise WitnessRejected("L not contained")
    positions = sorted(int(v.split(":")[1]) for v in R if v.startswith("s:"))
    m = Matching(tuple(positions), rg.k - 1)
    check = verify_k_matching(rg.source, m)
    if not check:
        raise WitnessRejected(
            f"triple vertices are not a {rg.k - 1}-matching: "
            f"{check.element} covered {check.count} times"
        )
    return m


@dataclass
class StructureReport:
    checks: dict[str, bool]
    details: dict[str, str]
    diameter: int | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_structure(rg: ReductionGraph) -> StructureReport:
    """Check bipartiteness, the root distance pattern, leg forcing and diameter.

    ``diameter_formula`` compares the measured diameter with
    ``2*ceil(k/2) + 3``; the measured value is reported alongside.
    """
    g = rg.graph
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    part = is_bipartite(g)
    checks["bipartite"] = part.bipartite
    if not part.bipartite:
        details["bipartite"] = "odd cycle: " + " ".join(g.names(part.odd_cycle))

    try:
        dm = all_pairs_distances(g)
    except DisconnectedGraphError as exc:
        for key in ("root_distances", "legs_forced", "diameter_formula"):
            checks[key] = False
            details[key] = str(exc)
        return StructureReport(checks, details)

    def dist(u: str, v: str) -> int:
        return dm(g.vid(u), g.vid(v))

    hubs = ("vA", "vB", "vC")
    bits = [r for r in rg.roots if r.startswith("d:")]
    expected = []
    expected += [(u, v, 4) for u, v in combinations(hubs, 2)]
    expected += [(u, v, 2) for u, v in combinations(bits, 2)]
    expected += [(u, v, 3) for u in hubs for v in bits]
    expected += [("v0", u, 2) for u in hubs]
    expected += [("v0", v, 1) for v in bits]
    bad = [(u, v, want, dist(u, v)) for u, v, want in expected if dist(u, v) != want]
    checks["root_distances"] = not bad
    if bad:
        details["root_distances"] = "; ".join(
            f"d({u},{v})={got}, expected {want}" for u, v, want, got in bad
        )

    table = resolver_table(dm, g.labels)
    unforced = []
    for r in rg.roots:
        first = [f"leg:{r}:1:1", f"leg:{r}:2:1"]
        if not all(v in g.index for v in first):
            unforced.append(r)
            continue
        u, v = g.ids(first)
        if table.resolvers[table.pair_index(u, v)] != to_mask(g.ids(rg.legs[r])):
            unforced.append(r)
    checks["legs_forced"] = not unforced
    if unforced:
        details["legs_forced"] = "leg pair not resolved by exactly its legs at: " + ", ".join(unforced)

    diam = int(dm.d.max())
    checks["diameter_formula"] = diam == rg.claimed_diameter
    if not checks["diameter_formula"]:
        details["diameter_formula"] = f"diameter {diam}, formula gives {rg.claimed_diameter}"
    return StructureReport(checks, details, diam)
