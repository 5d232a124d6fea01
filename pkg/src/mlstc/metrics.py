"""Objectives, disagreements, consistency score and label percentages."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import NamedTuple

from .graph import Edge, MultilayerGraph
from .labeling import Labeling


class Counts(NamedTuple):
    strong: int
    weak: int


# aggregated edge (including inserted pairs) -> (s(e), w(e))
EdgeLabelTally = dict[Edge, Counts]


def tally(G: MultilayerGraph, L: Labeling, existing_only: bool = False) -> EdgeLabelTally:
    """Count strong and weak instances of every edge over all layers.

    Inserted instances count as weak unless ``existing_only`` is set.
    """
    L.check(G)
    s: dict[Edge, int] = {}
    w: dict[Edge, int] = {}
    for i in range(G.k):
        for e in G.layers[i]:
            if e in L.strong[i]:
                s[e] = s.get(e, 0) + 1
            else:
                w[e] = w.get(e, 0) + 1
        if not existing_only:
            for e in L.inserted[i]:
                w[e] = w.get(e, 0) + 1
    return {e: Counts(s.get(e, 0), w.get(e, 0)) for e in sorted(s.keys() | w.keys())}


def disagreements(t: EdgeLabelTally) -> int:
    return sum(c.strong for c in t.values() if c.weak > 0)


def consistency_score(t: EdgeLabelTally) -> Fraction:
    """Mean strong fraction over edges strong somewhere; 1 if there are none."""
    F = [c for c in t.values() if c.strong > 0]
    if not F:
        return Fraction(1)
    return sum((Fraction(c.strong, c.strong + c.weak) for c in F), Fraction(0)) / len(F)


class Objectives(NamedTuple):
    objective_min: int
    objective_max: int
    objective_min_plus: int


def objectives(G: MultilayerGraph, L: Labeling) -> Objectives:
    d = disagreements(tally(G, L))
    strong = sum(len(s) for s in L.strong)
    weak = G.m - strong
    return Objectives(weak + d, strong - d, weak + L.inserted_count + d)


def percent(part: int, whole: int) -> float:
    """``100 * part / whole`` at one decimal, rounding half to even."""
    if whole == 0:
        return 0.0
    exact = Decimal(100 * part) / Decimal(whole)
    return float(exact.quantize(Decimal("0.1"), rounding=ROUND_HALF_EVEN))


def label_percentages(G: MultilayerGraph, L: Labeling) -> tuple[float, float]:
    """Weak and strong shares of all (layer, edge) instances, insertions included."""
    strong = sum(len(s) for s in L.strong)
    total = G.m + L.inserted_count
    return percent(total - strong, total), percent(strong, total)


@dataclass(frozen=True)
class StatsReport:
    weak_pct: float
    strong_pct: float
    mu: float
    d_k: int
    objective_min: int
    objective_max: int
    inserted_count: int
    runtime_ms: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    def summary(self) -> str:
        return (f"weak {self.weak_pct:.1f}% strong {self.strong_pct:.1f}% "
                f"mu {self.mu:.4f} d_k {self.d_k} objective {self.objective_min} "
                f"inserted {self.inserted_count}")


def stats_report(G: MultilayerGraph, L: Labeling, runtime_ms: float | None = None,
                 mu_existing_only: bool = False) -> StatsReport:
    """Collect all reported numbers; objective_min includes insertions."""
    t = tally(G, L)
    mu = consistency_score(tally(G, L, existing_only=True) if mu_existing_only else t)
    weak_pct, strong_pct = label_percentages(G, L)
    obj = objectives(G, L)
    return StatsReport(
        weak_pct=weak_pct,
        strong_pct=strong_pct,
        mu=round(float(mu), 6),
        d_k=disagreements(t),
        objective_min=obj.objective_min_plus,
        objective_max=obj.objective_max,
        inserted_count=L.inserted_count,
        runtime_ms=None if runtime_ms is None else round(runtime_ms, 3),
    )
