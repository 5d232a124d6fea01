"""Strong/weak labellings of multilayer graphs.

The approximation algorithms solve a weighted vertex cover on the combined
wedge graph (plain STC) or wedge hypergraph (STC with new weak edges) and
label every covered edge weak in all layers, so their output never has
cross-layer disagreements.  Exact labellings come from ``exact_cover`` on
the same structures.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from . import cover as cv
from .graph import Edge, MultilayerGraph
from .wedge import build_wedge_graph, build_wedge_hypergraph, wedges_closed_by

log = logging.getLogger(__name__)

STRONG, WEAK, WEAK_NEW = "strong", "weak", "weak-new"


@dataclass(frozen=True)
class Labeling:
    """Per-layer strong sets plus per-layer inserted (always weak) edges."""

    strong: tuple[frozenset[Edge], ...]
    inserted: tuple[frozenset[Edge], ...]
    cover: cv.CoverSolution | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_sets(cls, strong, inserted=None, cover=None) -> "Labeling":
        strong = tuple(frozenset(s) for s in strong)
        if inserted is None:
            inserted = tuple(frozenset() for _ in strong)
        return cls(strong, tuple(frozenset(s) for s in inserted), cover)

    @property
    def k(self) -> int:
        return len(self.strong)

    def weak(self, G: MultilayerGraph, i: int) -> frozenset[Edge]:
        return G.layers[i] - self.strong[i]

    def label(self, G: MultilayerGraph, i: int, e: Edge) -> str | None:
        if e in self.strong[i]:
            return STRONG
        if e in G.layers[i]:
            return WEAK
        if e in self.inserted[i]:
            return WEAK_NEW
        return None

    @property
    def inserted_count(self) -> int:
        return sum(len(s) for s in self.inserted)

    def check(self, G: MultilayerGraph) -> None:
        """Raise ValueError unless the labelling fits the graph."""
        if self.k != G.k or len(self.inserted) != G.k:
            raise ValueError(f"labelling has {self.k} layers, graph has {G.k}")
        for i, (s, new, es) in enumerate(zip(self.strong, self.inserted, G.layers)):
            if not s <= es:
                raise ValueError(f"layer {i}: strong edges outside the layer")
            if new & es:
                raise ValueError(f"layer {i}: inserted edges already exist")


@dataclass(frozen=True)
class ValidationReport:
    violations: list[tuple[int, tuple[int, Edge]]]
    disagreement_count: int

    @property
    def is_stc_valid(self) -> bool:
        return not self.violations

    @property
    def is_consistent(self) -> bool:
        return self.disagreement_count == 0

    @property
    def ok(self) -> bool:
        return self.is_stc_valid and self.is_consistent


def validate(G: MultilayerGraph, L: Labeling) -> ValidationReport:
    """STC violations over each layer's edges plus insertions, and d_k."""
    from .metrics import disagreements, tally

    L.check(G)
    violations = []
    for i in range(G.k):
        present = G.layers[i] | L.inserted[i]
        adj: dict[int, set[int]] = {}
        for u, v in present:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        strong = L.strong[i]
        for v in sorted(adj):
            for u, w in itertools.combinations(sorted(adj[v]), 2):
                if w in adj[u]:
                    continue
                if (min(u, v), max(u, v)) in strong and (min(v, w), max(v, w)) in strong:
                    violations.append((i, (v, (u, w))))
    return ValidationReport(violations, disagreements(tally(G, L)))


def _solve(inst, method, *, budget, node_limit, trace, greedy_weighted):
    if method == cv.PRICING:
        return cv.pricing_cover(inst, trace=trace)
    if method == cv.GREEDY:
        return cv.greedy_cover(inst, weighted=greedy_weighted)
    if method == cv.EXACT:
        return cv.exact_cover(inst, budget=budget, node_limit=node_limit)
    raise ValueError(f"unknown method {method!r}; choose from {cv.METHODS}")


def approx_min_ml_stc(
    G: MultilayerGraph,
    method: str = cv.PRICING,
    *,
    budget: int = cv.DEFAULT_EXACT_BUDGET,
    node_limit: int | None = None,
    trace=None,
    greedy_weighted: bool = True,
) -> Labeling:
    """Consistent STC labelling from a cover of the combined wedge graph.

    With ``method="pricing"`` the weak count is at most twice the optimum;
    ``method="exact"`` gives the optimum.
    """
    W = build_wedge_graph(G)
    sol = _solve(W.cover_instance(), method, budget=budget, node_limit=node_limit,
                 trace=trace, greedy_weighted=greedy_weighted)
    weak = set(sol.selected)
    return Labeling.from_sets([es - weak for es in G.layers], cover=sol)


def exact_min_ml_stc(G: MultilayerGraph, budget: int = cv.DEFAULT_EXACT_BUDGET,
                     node_limit: int | None = None) -> Labeling:
    return approx_min_ml_stc(G, cv.EXACT, budget=budget, node_limit=node_limit)


def exact_max_ml_stc(G: MultilayerGraph, budget: int = cv.DEFAULT_EXACT_BUDGET,
                     node_limit: int | None = None) -> tuple[Labeling, int]:
    """Optimal labelling for the maximisation objective and its value.

    Both objectives sum to ``G.m`` for every labelling, so the minimum-weak
    optimum is also a maximum-strong optimum.
    """
    L = exact_min_ml_stc(G, budget, node_limit)
    return L, G.m - L.cover.total_weight


def approx_min_ml_stc_plus(
    G: MultilayerGraph,
    method: str = cv.PRICING,
    postprocess: bool = True,
    *,
    budget: int = cv.DEFAULT_EXACT_BUDGET,
    node_limit: int | None = None,
    trace=None,
    greedy_weighted: bool = True,
) -> Labeling:
    """Consistent labelling with new weak edges, from a wedge-hypergraph cover.

    A covered pair is weak in every layer holding it and is inserted into
    every layer where it closes a wedge.  ``method="exact"`` returns the
    cheapest such cover.
    """
    H = build_wedge_hypergraph(G)
    sol = _solve(H.cover_instance(), method, budget=budget, node_limit=node_limit,
                 trace=trace, greedy_weighted=greedy_weighted)
    chosen = set(sol.selected)
    inserted: list[set[Edge]] = [set() for _ in range(G.k)]
    for e in sol.selected:
        for i in H.candidate_layers(e):
            inserted[i].add(e)
    L = Labeling.from_sets([es - chosen for es in G.layers], inserted, cover=sol)
    return post_process(G, L) if postprocess else L


def post_process(G: MultilayerGraph, L: Labeling) -> Labeling:
    """Drop each inserted edge from layers where no strong-strong wedge needs it."""
    kept = []
    for i in range(G.k):
        strong = L.strong[i]
        keep = set()
        for e in L.inserted[i]:
            for wd in wedges_closed_by(G, i, e):
                a, b = wd.legs
                if a in strong and b in strong:
                    keep.add(e)
                    break
        kept.append(keep)
    return Labeling.from_sets(L.strong, kept, cover=L.cover)


class LayerLabeling(NamedTuple):
    """One layer solved on its own: its edges, strong subset and insertions."""

    edges: frozenset[Edge]
    strong: frozenset[Edge]
    inserted: frozenset[Edge]

    @property
    def weak(self) -> frozenset[Edge]:
        return self.edges - self.strong


def baseline_per_layer(
    G: MultilayerGraph,
    method: str = cv.PRICING,
    plus: bool = False,
    *,
    postprocess: bool = False,
    budget: int = cv.DEFAULT_EXACT_BUDGET,
    node_limit: int | None = None,
    greedy_weighted: bool = True,
) -> list[LayerLabeling]:
    """Solve each layer on its own; labels may disagree across layers."""
    out = []
    for i in range(G.k):
        Gi = G.layer_subgraph(i)
        if plus:
            Li = approx_min_ml_stc_plus(Gi, method, postprocess, budget=budget,
                                        node_limit=node_limit, greedy_weighted=greedy_weighted)
        else:
            Li = approx_min_ml_stc(Gi, method, budget=budget, node_limit=node_limit,
                                   greedy_weighted=greedy_weighted)
        out.append(LayerLabeling(G.layers[i], Li.strong[0], Li.inserted[0]))
    return out


def combine(per_layer: list[LayerLabeling]) -> Labeling:
    """Stack per-layer results without any repair."""
    return Labeling.from_sets([p.strong for p in per_layer], [p.inserted for p in per_layer])


def enforce_consistency(per_layer: list[LayerLabeling]) -> Labeling:
    """Relabel weak everywhere each edge that is weak or inserted in some layer.

    Only strong labels flip, so per-layer STC validity is kept.
    """
    not_strong = set()
    for p in per_layer:
        not_strong |= p.weak | p.inserted
    return Labeling.from_sets([p.strong - not_strong for p in per_layer],
                              [p.inserted for p in per_layer])


def split_layers(G: MultilayerGraph, L: Labeling) -> list[LayerLabeling]:
    return [LayerLabeling(G.layers[i], L.strong[i], L.inserted[i]) for i in range(G.k)]


def exact_min_ml_stc_plus(G: MultilayerGraph, budget: int = cv.DEFAULT_EXACT_BUDGET,
                          node_limit: int | None = None) -> Labeling:
    """Minimum wedge-hypergraph cover labelling, without post-processing.

    This is optimal only for the variant that inserts every new weak edge in
    all layers where it closes a wedge; for the unrestricted problem it is a
    2-approximation.
    """
    log.info("exact hypergraph cover: optimal for the insert-everywhere variant, "
                "a 2-approximation otherwise")
    return approx_min_ml_stc_plus(G, cv.EXACT, False, budget=budget, node_limit=node_limit)


class OracleLimitExceeded(ValueError):
    pass


def oracle_min_ml_stc_plus(G: MultilayerGraph, max_nodes: int = 8,
                           max_layers: int = 2) -> tuple[Labeling, int]:
    """Optimum of the insertion problem by exhaustive search (test oracle).

    Searches every consistent strong set T of aggregated edges.  For fixed T
    the cheapest insertions are exactly the closing pairs of wedges whose
    legs are both strong, and such a pair must not itself be strong.
    Branches that cannot beat the incumbent are cut.
    """
    if G.n > max_nodes or G.k > max_layers:
        raise OracleLimitExceeded(
            f"oracle limited to n <= {max_nodes}, k <= {max_layers} (got n={G.n}, k={G.k})")
    edges = G.edges
    mult = [bin(G.aggregated[e]).count("1") for e in edges]
    adj = [{v: set(nb) for v, nb in a.items()} for a in G.adjacency]
    best_cost = G.m
    best_T: frozenset = frozenset()
    T: set[Edge] = set()
    forced: dict[tuple[int, Edge], int] = {}
    forced_pairs: dict[Edge, int] = {}

    def strong_wedge_closers(e):
        u, v = e
        out = []
        for i in range(G.k):
            if e not in G.layers[i]:
                continue
            a = adj[i]
            for center, other in ((u, v), (v, u)):
                for x in a[center]:
                    if x == other:
                        continue
                    f = (min(center, x), max(center, x))
                    g = (min(other, x), max(other, x))
                    if f in T and x not in a[other]:
                        out.append((i, g))
        return out

    def rec(j, cost):
        nonlocal best_cost, best_T
        if cost >= best_cost:
            return
        if j == len(edges):
            best_cost, best_T = cost, frozenset(T)
            return
        e = edges[j]
        if forced_pairs.get(e, 0) == 0:
            closers = strong_wedge_closers(e)
            if all(g not in T for _, g in closers):
                new = 0
                for key in closers:
                    if forced.get(key, 0) == 0:
                        new += 1
                    forced[key] = forced.get(key, 0) + 1
                    forced_pairs[key[1]] = forced_pairs.get(key[1], 0) + 1
                T.add(e)
                rec(j + 1, cost + new)
                T.discard(e)
                for key in closers:
                    forced[key] -= 1
                    forced_pairs[key[1]] -= 1
        rec(j + 1, cost + mult[j])

    rec(0, 0)
    inserted = [set() for _ in range(G.k)]
    for i in range(G.k):
        a = adj[i]
        for v, nb in a.items():
            for x, y in itertools.combinations(sorted(nb), 2):
                if y in a[x]:
                    continue
                if (min(v, x), max(v, x)) in best_T and (min(v, y), max(v, y)) in best_T:
                    inserted[i].add((x, y))
    L = Labeling.from_sets([es & best_T for es in G.layers], inserted)
    return L, best_cost


def format_labels_csv(G: MultilayerGraph, L: Labeling) -> str:
    """``layer,u,v,label`` rows, one per (layer, edge) including insertions."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["layer", "u", "v", "label"])
    for i in range(G.k):
        for e in sorted(G.layers[i] | L.inserted[i]):
            u, v = G.edge_label(e)
            w.writerow([G.layer_names[i], u, v, L.label(G, i, e)])
    return buf.getvalue()


def write_labels_csv(G: MultilayerGraph, L: Labeling, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_labels_csv(G, L))
