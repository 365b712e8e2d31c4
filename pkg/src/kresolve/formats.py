"""JSON encodings of graphs, triple systems, matchings and reports."""

from __future__ import annotations

import json
from typing import Any

from .graph import Graph, build_graph
from .kmd_reduction import ReductionGraph
from .resolving import KResolvingCertificate, ResolverTable, SolveResult
from .threedm import Matching, Reduction, TripleSystem


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.labels),
        "edges": [[g.labels[u], g.labels[v]] for u, v in g.edges()],
    }


def graph_from_json(obj: dict) -> Graph:
    """Accepts a plain graph object or a reduction bundle (uses its ``graph``)."""
    if "graph" in obj:
        obj = obj["graph"]
    return build_graph(obj["vertices"], [tuple(e) for e in obj["edges"]])


def system_to_json(sys: TripleSystem) -> dict:
    return {"n": sys.n, "triples": [list(t) for t in sys.triples]}


def system_from_json(obj: dict) -> TripleSystem:
    if "source" in obj and "triples" not in obj:
        obj = obj["source"]
    return TripleSystem(int(obj["n"]), tuple(tuple(int(x) for x in t) for t in obj["triples"]))


def matching_to_json(m: Matching) -> dict:
    return {"k": m.k, "positions": list(m.positions)}


def matching_from_json(obj: dict) -> Matching:
    return Matching(tuple(int(p) for p in obj["positions"]), int(obj["k"]))


def layout_to_json(red: Reduction) -> dict:
    return {"segments": {name: list(span) for name, span in red.segments.items()}}


def reduction_to_json(red: Reduction) -> dict:
    return {
        "k": red.k,
        "source": system_to_json(red.source),
        "padded_n": red.padded.n,
        "system": system_to_json(red.reduced),
        "layout": layout_to_json(red),
    }


def bundle_to_json(rg: ReductionGraph) -> dict:
    return {
        "k": rg.k,
        "x": rg.x,
        "m_prime": rg.m_prime,
        "graph": graph_to_json(rg.graph),
        "legs": {r: list(vs) for r, vs in rg.legs.items()},
        "source": system_to_json(rg.source),
    }


def bundle_from_json(obj: dict) -> ReductionGraph:
    """Rebuild a reduction bundle; the graph is taken as stored, not regenerated."""
    src = system_from_json(obj["source"])
    legs = {r: tuple(vs) for r, vs in obj["legs"].items()}
    k = int(obj["k"])
    return ReductionGraph(
        graph=graph_from_json(obj["graph"]),
        k=k,
        n=src.n,
        m=src.m,
        m_prime=int(obj["m_prime"]),
        roots=tuple(legs),
        legs=legs,
        x=int(obj["x"]),
        source=src,
    )


def resolving_set_to_json(k: int, labels: list[str]) -> dict:
    return {"k": k, "set": list(labels)}


def solve_report(result: SolveResult, g: Graph) -> dict:
    return {
        "k": result.k,
        "size": result.size,
        "set": None if result.vertices is None else g.names(result.vertices),
        "nodes_explored": result.nodes_explored,
        "status": result.status,
    }


def certificate_to_json(cert: KResolvingCertificate, table: ResolverTable) -> dict:
    pair = None
    if cert.failing_pair is not None:
        pair = [table.name(v) for v in cert.failing_pair]
    return {
        "k": cert.k,
        "valid": cert.valid,
        "size": len(cert.vertices),
        "failing_pair": pair,
        "resolver_count": cert.failing_count,
    }
