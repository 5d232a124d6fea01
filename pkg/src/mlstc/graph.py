"""Multilayer graph model and `.mledges` ingestion.

A multilayer graph has one shared node set and ``k`` undirected edge sets.
Nodes are dense integer ids ``0..n-1``; the original string labels are kept
in ``MultilayerGraph.labels``.  Edges are ``(u, v)`` tuples with ``u < v``.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

Edge = tuple[int, int]

DEFAULT_COLUMNS = ("layer", "src", "dst")


class ParseError(ValueError):
    """Raised for malformed `.mledges` input; carries the offending line."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop on node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ParseStats:
    lines: int = 0
    comments: int = 0
    duplicates: int = 0


@dataclass(frozen=True, eq=False)
class MultilayerGraph:
    labels: tuple[str, ...]
    layer_names: tuple[str, ...]
    layers: tuple[frozenset[Edge], ...]
    stats: ParseStats = field(default_factory=ParseStats, compare=False)

    def __post_init__(self):
        if not self.layers:
            raise ValueError("a multilayer graph needs at least one layer")
        if len(self.layer_names) != len(self.layers):
            raise ValueError("layer_names and layers differ in length")
        n = len(self.labels)
        for es in self.layers:
            for u, v in es:
                if not (0 <= u < v < n):
                    raise ValueError(f"edge {(u, v)} is not canonical or out of range")

    @classmethod
    def from_edge_lists(
        cls,
        layers: Iterable[Iterable[tuple]],
        labels: Iterable[str] | None = None,
        layer_names: Iterable[str] | None = None,
    ) -> "MultilayerGraph":
        """Build from per-layer lists of node pairs.

        Pairs may hold ints (then ``labels`` may give the node count via its
        length, default ``max id + 1``) or arbitrary hashables, which are
        mapped to dense ids in first-appearance order.
        """
        raw = [list(es) for es in layers]
        ids: dict = {}
        if labels is not None:
            label_list = [str(x) for x in labels]
            ids = {lab: i for i, lab in enumerate(label_list)}
        all_ints = all(isinstance(x, int) for es in raw for p in es for x in p)
        if all_ints and labels is not None:
            def to_id(x):
                return x
        elif all_ints:
            top = max((x for es in raw for p in es for x in p), default=-1)
            label_list = [str(i) for i in range(top + 1)]

            def to_id(x):
                return x
        else:
            label_list = list(ids)

            def to_id(x):
                key = str(x)
                if key not in ids:
                    ids[key] = len(label_list)
                    label_list.append(key)
                return ids[key]

        sets = [frozenset(edge(to_id(u), to_id(v)) for u, v in es) for es in raw]
        names = tuple(layer_names) if layer_names is not None else tuple(
            str(i + 1) for i in range(len(sets)))
        return cls(tuple(label_list), names, tuple(sets))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return len(self.layers)

    @property
    def m(self) -> int:
        """Total number of (layer, edge) instances, sum of the layer sizes."""
        return sum(len(es) for es in self.layers)

    def layer_size(self, i: int) -> int:
        return len(self.layer(i))

    def layer(self, i: int) -> frozenset[Edge]:
        self._check_layer(i)
        return self.layers[i]

    def _check_layer(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < self.k:
            raise IndexError(f"layer index {i!r} out of range 0..{self.k - 1}")

    @cached_property
    def aggregated(self) -> dict[Edge, int]:
        """Edge -> bitmask of the layers containing it, in canonical edge order."""
        member: dict[Edge, int] = {}
        for i, es in enumerate(self.layers):
            for e in es:
                member[e] = member.get(e, 0) | (1 << i)
        return dict(sorted(member.items()))

    @property
    def edges(self) -> list[Edge]:
        return list(self.aggregated)

    @cached_property
    def adjacency(self) -> tuple[dict[int, frozenset[int]], ...]:
        out = []
        for es in self.layers:
            adj: dict[int, set[int]] = {}
            for u, v in es:
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
            out.append({x: frozenset(ns) for x, ns in adj.items()})
        return tuple(out)

    def layers_of(self, e: Edge) -> list[int]:
        mask = self.aggregated.get(e, 0)
        return [i for i in range(self.k) if mask >> i & 1]

    def edge_label(self, e: Edge) -> tuple[str, str]:
        return self.labels[e[0]], self.labels[e[1]]

    def layer_subgraph(self, i: int) -> "MultilayerGraph":
        """Single-layer graph over the same node set."""
        self._check_layer(i)
        return MultilayerGraph(self.labels, (self.layer_names[i],), (self.layers[i],))


def layer_count_of(G: MultilayerGraph, e: Edge) -> int:
    return bin(G.aggregated.get(e, 0)).count("1")


def candidate_new_edges(G: MultilayerGraph, i: int) -> set[Edge]:
    """Non-edges of layer ``i`` that close at least one wedge of that layer."""
    G._check_layer(i)
    adj = G.adjacency[i]
    out: set[Edge] = set()
    for nbrs in adj.values():
        for u, w in itertools.combinations(sorted(nbrs), 2):
            if w not in adj[u]:
                out.add((u, w))
    return out


def parse_multilayer_edgelist(
    source: str | TextIO,
    columns: tuple[str, str, str] | list[str] = DEFAULT_COLUMNS,
) -> MultilayerGraph:
    """Parse `.mledges` text: one ``<layer> <u> <v>`` record per line.

    Blank lines and ``#`` comments are skipped.  Layers and nodes are
    numbered in order of first appearance.  Duplicate (layer, edge) records
    collapse (direction is ignored); the count is kept in ``stats``.
    """
    columns = tuple(columns)
    if sorted(columns) != sorted(DEFAULT_COLUMNS):
        raise ValueError(f"columns must be a permutation of {DEFAULT_COLUMNS}, got {columns}")
    pos = {name: columns.index(name) for name in DEFAULT_COLUMNS}
    stream = io.StringIO(source) if isinstance(source, str) else source

    node_ids: dict[str, int] = {}
    layer_ids: dict[str, int] = {}
    layer_edges: list[set[Edge]] = []
    n_lines = n_comments = n_dup = 0

    def nid(label: str) -> int:
        if label not in node_ids:
            node_ids[label] = len(node_ids)
        return node_ids[label]

    for lineno, line in enumerate(stream, start=1):
        n_lines += 1
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            n_comments += 1
            continue
        fields = text.split()
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", lineno)
        layer, a, b = fields[pos["layer"]], fields[pos["src"]], fields[pos["dst"]]
        if a == b:
            raise ParseError(f"self-loop on node {a!r}", lineno)
        if layer not in layer_ids:
            layer_ids[layer] = len(layer_ids)
            layer_edges.append(set())
        e = edge(nid(a), nid(b))
        bucket = layer_edges[layer_ids[layer]]
        if e in bucket:
            n_dup += 1
        bucket.add(e)

    if not layer_edges:
        raise ParseError("no edges found", n_lines)
    return MultilayerGraph(
        labels=tuple(node_ids),
        layer_names=tuple(layer_ids),
        layers=tuple(frozenset(es) for es in layer_edges),
        stats=ParseStats(n_lines, n_comments, n_dup),
    )


def read_mledges(path, columns=DEFAULT_COLUMNS) -> MultilayerGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_multilayer_edgelist(fh, columns)


def format_mledges(G: MultilayerGraph) -> str:
    lines = []
    for name, es in zip(G.layer_names, G.layers):
        for u, v in sorted(es):
            lines.append(f"{name} {G.labels[u]} {G.labels[v]}")
    return "\n".join(lines) + "\n"


def write_mledges(G: MultilayerGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_mledges(G))
