"""Seeded instance generation and end-to-end equivalence checks for both reductions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .formats import system_to_json
from .kmd_reduction import build_kmd_instance
from .resolving import forced_vertices, k_metric_dimension_exact, table_for
from .threedm import Matching, TripleSystem, find_k_matching, reduce_3dm_to_3dkm


def generate_system(
    n: int, m: int, planted: bool, rng: np.random.Generator
) -> tuple[TripleSystem, Matching | None]:
    """Random triple list; when ``planted``, a perfect matching is hidden in it.

    Returns the system and the planted matching's positions (or ``None``).
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if planted and m < n:
        raise ValueError(f"cannot plant a matching of {n} triples in {m} triples")
    triples: list[tuple[int, int, int]] = []
    if planted:
        pb = rng.permutation(n) + 1
        pc = rng.permutation(n) + 1
        triples = [(i + 1, int(pb[i]), int(pc[i])) for i in range(n)]
    while len(triples) < m:
        a, b, c = (int(x) for x in rng.integers(1, n + 1, size=3))
        triples.append((a, b, c))
    order = rng.permutation(m)
    shuffled = [triples[i] for i in order]
    sys = TripleSystem(n, tuple(shuffled))
    if not planted:
        return sys, None
    # order[new] = old, planted triples were the first n old positions
    hidden = tuple(sorted(new + 1 for new, old in enumerate(order) if old < n))
    return sys, Matching(hidden, 1)


def trial_seeds(seed: int, trials: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in ss.spawn(trials)]


def decide_kmd(sys: TripleSystem, k: int, node_budget: int | None = None) -> dict:
    """Decide the graph side of the k-metric-dimension reduction exactly."""
    rg = build_kmd_instance(sys, k)
    table = table_for(rg.graph)
    forced = forced_vertices(table, k)
    forced_labels = set() if forced is None else set(rg.graph.names(forced))
    result = k_metric_dimension_exact(table, k, node_budget=node_budget)
    return {
        "x": rg.x,
        "forced_contains_legs": rg.leg_set <= forced_labels,
        "status": result.status,
        "min_size": result.size,
        "yes": result.size is not None and result.size <= rg.x,
        "nodes_explored": result.nodes_explored,
    }


@dataclass
class RoundtripSummary:
    trials: int = 0
    matching_agreements: int = 0
    kmd_agreements: int = 0
    yes_instances: int = 0
    disagreements: list[dict] = field(default_factory=list)
    budget_hits: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.budget_hits

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "matching_agreements": self.matching_agreements,
            "kmd_agreements": self.kmd_agreements,
            "yes_instances": self.yes_instances,
            "disagreements": self.disagreements,
            "budget_hits": self.budget_hits,
        }


def roundtrip(
    n: int,
    m: int,
    k: int,
    seed: int,
    trials: int,
    planted: bool | None = None,
    node_budget: int | None = 10_000_000,
    max_nodes: int = 2_000_000,
) -> RoundtripSummary:
    """Generate systems and check both reductions preserve the yes/no answer.

    For each trial the source answer (has a 1-matching, resp. a
    (k-1)-matching) is compared with the brute-force k-matching of the
    3DkM reduction and with the exact k-metric dimension of the graph
    reduction. ``planted=None`` alternates planted and unplanted trials.
    The graph side is skipped when ``n <= k``.
    """
    summary = RoundtripSummary()
    for t, s in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(s)
        plant = (t % 2 == 0) if planted is None else planted
        sys, _ = generate_system(n, m, plant, rng)
        summary.trials += 1

        has_1 = find_k_matching(sys, 1, max_nodes) is not None
        red = reduce_3dm_to_3dkm(sys, k)
        has_k = find_k_matching(red.reduced, k, max_nodes) is not None
        if has_1 == has_k:
            summary.matching_agreements += 1
        else:
            summary.disagreements.append(
                {"trial": t, "reduction": "3dm-3dkm", "source": system_to_json(sys),
                 "source_yes": has_1, "target_yes": has_k}
            )
        summary.yes_instances += has_1

        if n > k:
            has_km1 = has_1 if k == 2 else find_k_matching(sys, k - 1, max_nodes) is not None
            dec = decide_kmd(sys, k, node_budget)
            if dec["status"] == "incumbent":
                summary.budget_hits.append({"trial": t, "source": system_to_json(sys), **dec})
            elif has_km1 == dec["yes"] and dec["forced_contains_legs"]:
                summary.kmd_agreements += 1
            else:
                summary.disagreements.append(
                    {"trial": t, "reduction": "3dkm-kmd", "source": system_to_json(sys),
                     "source_yes": has_km1, **dec}
                )
    return summary
