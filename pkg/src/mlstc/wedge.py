"""Wedges and the combined wedge (hyper)graphs.

A wedge ``(v, {u, w})`` is an open triangle of one layer: both legs
``{v,u}`` and ``{v,w}`` exist there and ``{u,w}`` does not.

``WedgeGraph`` has one node per aggregated edge, weighted by the number of
layers holding it, and one adjacency per pair of legs forming a wedge in some
layer.  ``WedgeHypergraph`` adds the closing pair of every wedge as a third
member, giving a 3-uniform hypergraph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .cover import CoverInstance
from .graph import Edge, MultilayerGraph, edge

EXISTING = "existing"
CANDIDATE = "candidate"


class Wedge(NamedTuple):
    center: int
    ends: Edge

    @property
    def legs(self) -> tuple[Edge, Edge]:
        v, (u, w) = self.center, self.ends
        return edge(v, u), edge(v, w)


class Witness(NamedTuple):
    layer: int
    center: int


def enumerate_wedges(G: MultilayerGraph, i: int) -> list[Wedge]:
    """All wedges of layer ``i``, ordered by center id then by ends."""
    G._check_layer(i)
    adj = G.adjacency[i]
    out = []
    for v in sorted(adj):
        for u, w in itertools.combinations(sorted(adj[v]), 2):
            if w not in adj[u]:
                out.append(Wedge(v, (u, w)))
    return out


def wedges_closed_by(G: MultilayerGraph, i: int, e: Edge) -> list[Wedge]:
    """Wedges of layer ``i`` whose missing edge is ``e`` (empty if ``e`` exists)."""
    adj = G.adjacency[i]
    u, w = e
    if e in G.layers[i] or u not in adj or w not in adj:
        return []
    return [Wedge(v, e) for v in sorted(adj[u] & adj[w])]


@dataclass(frozen=True)
class WedgeGraph:
    nodes: dict[Edge, int]
    adjacency: list[tuple[Edge, Edge]]
    witnesses: dict[tuple[Edge, Edge], list[Witness]]

    rank = 2

    def cover_instance(self) -> CoverInstance:
        return CoverInstance(self.nodes, self.adjacency)


@dataclass(frozen=True)
class WedgeHypergraph:
    """Node-weighted 3-uniform wedge hypergraph.

    ``origins[e][i]`` is ``"existing"`` if ``e`` is an edge of layer ``i`` and
    ``"candidate"`` if it closes some wedge of layer ``i``; layers where the
    pair plays neither role are absent.  Node weight is the size of that map.
    """

    nodes: dict[Edge, int]
    origins: dict[Edge, dict[int, str]]
    hyperedges: list[tuple[Edge, Edge, Edge]]
    witnesses: dict[tuple[Edge, Edge, Edge], list[Witness]]

    rank = 3

    def cover_instance(self) -> CoverInstance:
        return CoverInstance(self.nodes, self.hyperedges)

    def candidate_layers(self, e: Edge) -> list[int]:
        return sorted(i for i, role in self.origins[e].items() if role == CANDIDATE)


def build_wedge_graph(G: MultilayerGraph) -> WedgeGraph:
    nodes = {e: bin(mask).count("1") for e, mask in G.aggregated.items()}
    witnesses: dict[tuple[Edge, Edge], list[Witness]] = {}
    for i in range(G.k):
        for wd in enumerate_wedges(G, i):
            witnesses.setdefault(tuple(sorted(wd.legs)), []).append(Witness(i, wd.center))
    # dict insertion order is first-witness order: (layer, center, ends)
    return WedgeGraph(nodes, list(witnesses), witnesses)


def build_wedge_hypergraph(G: MultilayerGraph) -> WedgeHypergraph:
    origins: dict[Edge, dict[int, str]] = {}
    for e, mask in G.aggregated.items():
        origins[e] = {i: EXISTING for i in range(G.k) if mask >> i & 1}
    witnesses: dict[tuple[Edge, Edge, Edge], list[Witness]] = {}
    for i in range(G.k):
        for wd in enumerate_wedges(G, i):
            origins.setdefault(wd.ends, {})[i] = CANDIDATE
            triple = tuple(sorted((*wd.legs, wd.ends)))
            witnesses.setdefault(triple, []).append(Witness(i, wd.center))
    origins = dict(sorted(origins.items()))
    nodes = {e: len(roles) for e, roles in origins.items()}
    return WedgeHypergraph(nodes, origins, list(witnesses), witnesses)


def dump_wedge_graph(W: WedgeGraph | WedgeHypergraph, G: MultilayerGraph) -> str:
    """Debug text: ``edge u v weight w`` lines, then one line per (hyper)edge."""
    lab = G.labels
    lines = [f"edge {lab[u]} {lab[v]} weight {w}" for (u, v), w in W.nodes.items()]
    members = W.adjacency if isinstance(W, WedgeGraph) else W.hyperedges
    for members_ in members:
        lines.append("hyperedge " + " ".join(f"{lab[u]}-{lab[v]}" for u, v in members_))
    return "\n".join(lines) + "\n"
