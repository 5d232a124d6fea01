"""Integer programs for the labelling problems, written in CPLEX LP format.

Variable names use node ids (``x_0_3``) and 1-based layer numbers
(``z_0_3_2``) so that arbitrary node labels never leak into the LP syntax;
``manifest`` maps every name back to the original labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Edge, MultilayerGraph, candidate_new_edges
from .wedge import enumerate_wedges

Term = tuple[int, str]  # (coefficient, variable)


@dataclass(frozen=True)
class Row:
    name: str
    terms: tuple[Term, ...]
    op: str  # "<=", ">=", "="
    rhs: int


@dataclass
class LpDocument:
    sense: str  # "maximize" | "minimize"
    objective: list[Term] = field(default_factory=list)
    rows: list[Row] = field(default_factory=list)
    binaries: list[str] = field(default_factory=list)
    # variable -> (edge, layer index or None)
    variables: dict[str, tuple[Edge, int | None]] = field(default_factory=dict)
    comment: str = ""

    def var(self, prefix: str, e: Edge, layer: int | None = None) -> str:
        name = f"{prefix}_{e[0]}_{e[1]}" if layer is None else f"{prefix}_{e[0]}_{e[1]}_{layer + 1}"
        if name not in self.variables:
            self.variables[name] = (e, layer)
            self.binaries.append(name)
        return name

    def add(self, name: str, terms, op: str, rhs: int) -> None:
        self.rows.append(Row(name, tuple(terms), op, rhs))

    def to_text(self) -> str:
        out = []
        if self.comment:
            out.append(f"\\ {self.comment}")
        out.append("Maximize" if self.sense == "maximize" else "Minimize")
        out.append(" obj: " + (_expr(self.objective) or "0"))
        out.append("Subject To")
        for r in self.rows:
            out.append(f" {r.name}: {_expr(r.terms)} {r.op} {r.rhs}")
        out.append("Binary")
        out.extend(f" {b}" for b in self.binaries)
        out.append("End")
        return "\n".join(out) + "\n"

    def manifest(self, G: MultilayerGraph) -> str:
        lines = ["variable\tlayer\tu\tv"]
        for name, (e, layer) in self.variables.items():
            u, v = G.edge_label(e)
            lines.append(f"{name}\t{'*' if layer is None else G.layer_names[layer]}\t{u}\t{v}")
        return "\n".join(lines) + "\n"


def _expr(terms) -> str:
    parts = []
    for c, v in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v if mag == 1 else f"{mag} {v}"
        parts.append(body if not parts and sign == "+" else f"{sign} {body}")
    return " ".join(parts)


def _wedge_rows(G: MultilayerGraph, doc: LpDocument, prefix: str, op: str, rhs: int) -> None:
    for i in range(G.k):
        for wd in enumerate_wedges(G, i):
            a, b = wd.legs
            u, w = wd.ends
            doc.add(f"w{i + 1}_{wd.center}_{u}_{w}",
                    [(1, doc.var(prefix, a)), (1, doc.var(prefix, b))], op, rhs)


def export_max_stc(G: MultilayerGraph) -> LpDocument:
    """Maximise weighted strong edges; two legs of a wedge cannot both be strong."""
    doc = LpDocument("maximize", comment="maximum multilayer STC")
    for e in G.edges:
        doc.var("x", e)
    doc.objective = [(bin(G.aggregated[e]).count("1"), doc.var("x", e)) for e in G.edges]
    _wedge_rows(G, doc, "x", "<=", 1)
    return doc


def export_min_stc(G: MultilayerGraph) -> LpDocument:
    """Minimise weighted weak edges; every wedge needs a weak leg."""
    doc = LpDocument("minimize", comment="minimum multilayer STC")
    for e in G.edges:
        doc.var("y", e)
    doc.objective = [(bin(G.aggregated[e]).count("1"), doc.var("y", e)) for e in G.edges]
    _wedge_rows(G, doc, "y", ">=", 1)
    return doc


def export_min_stc_plus(G: MultilayerGraph, reduced: bool = True) -> LpDocument:
    """Linearised model with new weak edges.

    Per (pair, layer): ``y`` weak label, ``u`` presence, ``z = y * u``.
    With ``reduced`` only pairs that exist in, or close a wedge of, a layer
    get variables for that layer; otherwise every node pair in every layer.
    """
    doc = LpDocument("minimize", comment="minimum multilayer STC with new weak edges")
    slots: dict[Edge, list[int]] = {}
    if reduced:
        for i in range(G.k):
            for e in G.layers[i] | candidate_new_edges(G, i):
                slots.setdefault(e, []).append(i)
    else:
        for e in itertools.combinations(range(G.n), 2):
            slots[e] = list(range(G.k))
    for e in sorted(slots):
        for i in sorted(slots[e]):
            doc.var("y", e, i)
            doc.var("u", e, i)
            doc.var("z", e, i)
    doc.objective = [(1, f"z_{e[0]}_{e[1]}_{i + 1}") for e in sorted(slots) for i in sorted(slots[e])]
    for e in sorted(slots):
        layers = sorted(slots[e])
        tag = f"{e[0]}_{e[1]}"
        for i in layers:
            y, u, z = (f"{p}_{tag}_{i + 1}" for p in "yuz")
            doc.add(f"lz_{tag}_{i + 1}", [(1, z), (-1, y)], "<=", 0)
            doc.add(f"lu_{tag}_{i + 1}", [(1, z), (-1, u)], "<=", 0)
            doc.add(f"lb_{tag}_{i + 1}", [(1, z), (-1, y), (-1, u)], ">=", -1)
            if e in G.layers[i]:
                doc.add(f"ex_{tag}_{i + 1}", [(1, u)], "=", 1)
            else:
                doc.add(f"nw_{tag}_{i + 1}", [(1, y), (-1, u)], ">=", 0)
        for a, b in zip(layers, layers[1:]):
            doc.add(f"c_{tag}_{a + 1}_{b + 1}",
                    [(1, f"y_{tag}_{a + 1}"), (-1, f"y_{tag}_{b + 1}")], "=", 0)
    for i in range(G.k):
        for wd in enumerate_wedges(G, i):
            a, b = wd.legs
            u, w = wd.ends
            doc.add(f"w{i + 1}_{wd.center}_{u}_{w}",
                    [(1, doc.var("z", a, i)), (1, doc.var("z", b, i)), (1, doc.var("z", (u, w), i))],
                    ">=", 1)
    return doc


EXPORTERS = {"max": export_max_stc, "min": export_min_stc, "plus": export_min_stc_plus}
