"""Minimum weighted vertex cover on r-uniform (hyper)graphs.

Three solvers share one instance type:

* ``pricing_cover`` -- primal-dual pricing, an r-approximation.
* ``greedy_cover`` -- repeatedly take the node hitting the most uncovered edges.
* ``exact_cover`` -- branch-and-bound, for desk-scale instances.

Weights must be exact numbers (``int`` or ``fractions.Fraction``): tightness
is tested by equality.
"""

from __future__ import annotations

import heapq
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

log = logging.getLogger(__name__)

PRICING, GREEDY, EXACT = "pricing", "greedy", "exact"
METHODS = (PRICING, GREEDY, EXACT)

DEFAULT_EXACT_BUDGET = 500_000


class ExactBudgetExceeded(RuntimeError):
    """The instance is too large for the built-in exact solver."""

    def __init__(self, what: str):
        super().__init__(
            f"instance too large for exact solver ({what}); "
            "export the ILP with `mlstc export` and use an external MILP solver")


@dataclass(frozen=True)
class CoverInstance:
    weights: Mapping[Hashable, int | Fraction]
    edges: Sequence[tuple]

    def __post_init__(self):
        sizes = {len(e) for e in self.edges}
        if len(sizes) > 1:
            raise ValueError(f"edges must be uniform, found sizes {sorted(sizes)}")
        for e in self.edges:
            for x in e:
                if x not in self.weights:
                    raise ValueError(f"edge {e} references unknown node {x!r}")
        for x, w in self.weights.items():
            if not w > 0:
                raise ValueError(f"node {x!r} has non-positive weight {w}")

    @property
    def rank(self) -> int:
        return len(self.edges[0]) if self.edges else 0

    @property
    def nodes(self) -> list:
        return list(self.weights)


@dataclass(frozen=True)
class CoverSolution:
    selected: tuple
    total_weight: int | Fraction
    method: str
    optimality_bound: int | Fraction | None = None
    ratio_bound: int | None = None
    prices: list | None = field(default=None, repr=False)


def is_cover(inst: CoverInstance, selected: Iterable) -> bool:
    chosen = set(selected)
    return all(any(x in chosen for x in e) for e in inst.edges)


def _weight(inst: CoverInstance, nodes: Iterable) -> int | Fraction:
    return sum((inst.weights[x] for x in nodes), 0)


def pricing_cover(
    inst: CoverInstance, trace: Callable[[str], None] | None = None
) -> CoverSolution:
    """Primal-dual pricing in the instance's edge order.

    An edge with no tight member has its price raised by the smallest
    remaining slack among its members; tight nodes form the cover.  The sum
    of prices is a feasible dual, hence a lower bound on the optimum.
    """
    slack = dict(inst.weights)
    prices = []
    for e in inst.edges:
        if any(slack[x] == 0 for x in e):
            prices.append(0)
            continue
        delta = min(slack[x] for x in e)
        for x in e:
            slack[x] -= delta
        prices.append(delta)
        if trace is not None:
            made = [x for x in e if slack[x] == 0]
            trace(f"price {e} += {delta}; tight {made}")
    selected = tuple(x for x in inst.weights if slack[x] == 0)
    return CoverSolution(
        selected=selected,
        total_weight=_weight(inst, selected),
        method=PRICING,
        optimality_bound=sum(prices, 0),
        ratio_bound=inst.rank or None,
        prices=prices,
    )


def greedy_cover(inst: CoverInstance, weighted: bool = True) -> CoverSolution:
    """Repeatedly take the best-scoring node until every edge is covered.

    The score is uncovered edges per unit weight, or the raw uncovered-edge
    count with ``weighted=False``.  Ties go to the node earliest in the
    instance's node order.
    """
    order = {x: i for i, x in enumerate(inst.weights)}
    incident: dict = {x: [] for x in inst.weights}
    for j, e in enumerate(inst.edges):
        for x in e:
            incident[x].append(j)
    uncovered = [True] * len(inst.edges)
    remaining = len(inst.edges)

    def score(x):
        cnt = sum(1 for j in incident[x] if uncovered[j])
        return Fraction(cnt) / inst.weights[x] if weighted else cnt

    heap = [(-score(x), order[x], x) for x in inst.weights if incident[x]]
    heapq.heapify(heap)
    selected = []
    while remaining:
        neg, pos, x = heapq.heappop(heap)
        current = score(x)
        if current != -neg:
            if current:
                heapq.heappush(heap, (-current, pos, x))
            continue
        selected.append(x)
        for j in incident[x]:
            if uncovered[j]:
                uncovered[j] = False
                remaining -= 1
    selected.sort(key=order.__getitem__)
    return CoverSolution(tuple(selected), _weight(inst, selected), GREEDY)


def exact_cover(
    inst: CoverInstance,
    budget: int = DEFAULT_EXACT_BUDGET,
    node_limit: int | None = None,
) -> CoverSolution:
    """Minimum weight cover by LP-based branch-and-bound.

    ``budget`` caps the number of instance edges accepted; ``node_limit``
    optionally caps the number of search-tree nodes.  Either overrun raises
    ``ExactBudgetExceeded``.  The result is deterministic for a given
    instance (node order and edge order included).
    """
    if len(inst.edges) > budget:
        raise ExactBudgetExceeded(f"{len(inst.edges)} edges > budget {budget}")
    nodes = list(inst.weights)
    index = {x: i for i, x in enumerate(nodes)}
    edges = sorted({tuple(sorted(index[x] for x in e)) for e in inst.edges})
    bb = _BranchAndBound([inst.weights[x] for x in nodes], edges, node_limit)
    chosen = bb.run()
    selected = tuple(nodes[i] for i in chosen)
    total = _weight(inst, selected)
    log.debug("exact cover: weight %s, %d search nodes", total, bb.visited)
    return CoverSolution(selected, total, EXACT, optimality_bound=total)


class _BranchAndBound:
    """Depth-first branch-and-bound over 0/1 node variables.

    Bounds come from the LP relaxation, strengthened for graphs by clique
    inequalities (a clique of q nodes needs q-1 of them in any cover).
    Branching fixes the fractional node of highest degree, "in" first.
    Incumbents come from pricing, greedy and LP rounding, each pruned of
    redundant nodes.
    """

    EPS = 1e-6

    def __init__(self, weights, edges, node_limit):
        self.w = weights
        self.edges = edges
        self.node_limit = node_limit
        self.visited = 0
        self.n = len(weights)
        self.integral = all(isinstance(x, int) for x in weights)
        self.degree = _degrees(edges)
        self.incident: list[list[tuple]] = [[] for _ in range(self.n)]
        for e in edges:
            for x in e:
                self.incident[x].append(e)
        rows = list(edges)
        rhs = [1] * len(edges)
        if edges and len(edges[0]) == 2:
            for q in _greedy_cliques(edges, self.n):
                rows.append(q)
                rhs.append(len(q) - 1)
        self._A, self._b = _constraint_matrix(rows, rhs, self.n)
        self._c = np.array([float(x) for x in weights])
        self.best_cost = None
        self.best = None

    def _tick(self):
        self.visited += 1
        if self.node_limit is not None and self.visited > self.node_limit:
            raise ExactBudgetExceeded(f"more than {self.node_limit} search nodes")

    def _offer(self, chosen):
        chosen = self._prune_redundant(set(chosen))
        cost = sum((self.w[x] for x in chosen), 0)
        if self.best_cost is None or cost < self.best_cost or (
                cost == self.best_cost and sorted(chosen) < self.best):
            self.best_cost, self.best = cost, sorted(chosen)

    def _prune_redundant(self, chosen):
        for x in sorted(chosen, key=lambda x: (-self.w[x], x)):
            if all(any(y in chosen and y != x for y in e) for e in self.incident[x]):
                chosen.discard(x)
        return chosen

    def _lp(self, fixed):
        from scipy.optimize import linprog

        bounds = [(fixed.get(i, 0), fixed.get(i, 1)) for i in range(self.n)]
        res = linprog(self._c, A_ub=self._A, b_ub=self._b, bounds=bounds, method="highs")
        if res.status != 0:
            return None, None
        return res.fun, res.x

    def _prunable(self, lp_value):
        if self.best_cost is None:
            return False
        bound = lp_value - self.EPS
        if self.integral:
            bound = math.ceil(bound)
        return bound >= self.best_cost

    def run(self):
        if not self.edges:
            return []
        inst = CoverInstance(dict(enumerate(self.w)), self.edges)
        for sol in (pricing_cover(inst), greedy_cover(inst, weighted=False), greedy_cover(inst)):
            self._offer(sol.selected)
        stack = [{}]
        while stack:
            fixed = stack.pop()
            self._tick()
            value, x = self._lp(fixed)
            if value is None or self._prunable(value):
                continue
            frac = [i for i in range(self.n) if self.EPS < x[i] < 1 - self.EPS and i not in fixed]
            if not frac:
                self._offer(i for i in range(self.n) if x[i] > 0.5)
                continue
            r = len(self.edges[0])
            self._offer(i for i in range(self.n) if x[i] >= 1 / r - self.EPS)
            if self._prunable(value):
                continue
            v = min(frac, key=lambda i: (-self.degree.get(i, 0), i))
            stack.append({**fixed, v: 0})
            stack.append({**fixed, v: 1})
        return self.best


def _greedy_cliques(edges, n):
    """One maximal clique grown greedily from every edge, size >= 3 only."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    found = set()
    for a, b in edges:
        q = [a, b]
        cand = adj[a] & adj[b]
        while cand:
            x = min(cand, key=lambda y: (-len(adj[y] & cand), y))
            q.append(x)
            cand &= adj[x]
        if len(q) >= 3:
            found.add(tuple(sorted(q)))
    return sorted(found)


def _constraint_matrix(rows, rhs, n):
    """Covering rows ``sum x >= rhs`` in linprog's ``A_ub x <= b_ub`` form."""
    from scipy.sparse import coo_matrix

    r = [j for j, row in enumerate(rows) for _ in row]
    c = [x for row in rows for x in row]
    A = coo_matrix((-np.ones(len(r)), (r, c)), shape=(len(rows), n)).tocsr()
    return A, -np.array(rhs, dtype=float)


def _degrees(edges) -> dict[int, int]:
    degree: dict[int, int] = {}
    for e in edges:
        for x in e:
            degree[x] = degree.get(x, 0) + 1
    return degree


def solve(inst: CoverInstance, method: str, **kwargs) -> CoverSolution:
    if method == PRICING:
        return pricing_cover(inst, **kwargs)
    if method == GREEDY:
        return greedy_cover(inst, **kwargs)
    if method == EXACT:
        return exact_cover(inst, **kwargs)
    raise ValueError(f"unknown cover method {method!r}; choose from {METHODS}")


def stderr_trace(msg: str) -> None:
    print(msg, file=sys.stderr)
