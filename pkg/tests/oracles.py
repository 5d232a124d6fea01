"""Brute-force reference implementations used only by the tests.

Nothing here calls into the wedge or cover modules: wedges are found by
scanning node triples and optima by enumeration.
"""

from __future__ import annotations

import itertools

from mlstc.generate import correlated, erdos_renyi


def pair(u, v):
    return (u, v) if u < v else (v, u)


def triple_scan_wedges(layer_edges, n):
    """Set of (center, (u, w)) over all node triples."""
    out = set()
    for v in range(n):
        for u, w in itertools.combinations([x for x in range(n) if x != v], 2):
            if pair(u, v) in layer_edges and pair(v, w) in layer_edges and pair(u, w) not in layer_edges:
                out.add((v, (u, w)))
    return out


def stc_violations(present, strong, n):
    """Wedges over ``present`` whose two legs are in ``strong``."""
    return [(v, uw) for v, uw in triple_scan_wedges(present, n)
            if pair(v, uw[0]) in strong and pair(v, uw[1]) in strong]


def pairwise_disagreements(G, strong, inserted):
    """Size of the multiset of strong instances that disagree with another layer.

    Two layers disagree on a shared pair when one holds it strong and the
    other weak (existing or inserted).
    """
    total = 0
    for i in range(G.k):
        for e in strong[i]:
            if any(j != i and ((e in G.layers[j] and e not in strong[j]) or e in inserted[j])
                   for j in range(G.k)):
                total += 1
    return total


# ---- plain STC --------------------------------------------------------------

def brute_min_ml_stc(G):
    """Minimum weak instances over all consistent labellings.

    Each aggregated edge is strong everywhere or weak everywhere; two legs of
    a wedge of any layer cannot both be strong.  Exhaustive depth-first
    search, cutting branches that cannot beat the incumbent.
    """
    edges = sorted(G.aggregated)
    idx = {e: j for j, e in enumerate(edges)}
    mult = [bin(G.aggregated[e]).count("1") for e in edges]
    conflict = [0] * len(edges)
    for i in range(G.k):
        for v, (u, w) in triple_scan_wedges(G.layers[i], G.n):
            a, b = idx[pair(u, v)], idx[pair(v, w)]
            conflict[a] |= 1 << b
            conflict[b] |= 1 << a
    best = [sum(mult)]

    def rec(j, strong_mask, cost):
        if cost >= best[0]:
            return
        if j == len(edges):
            best[0] = cost
            return
        if not conflict[j] & strong_mask:
            rec(j + 1, strong_mask | 1 << j, cost)
        rec(j + 1, strong_mask, cost + mult[j])

    rec(0, 0, 0)
    return best[0]


def literal_min_ml_stc(G):
    """Minimum of sum |E_i minus S_i| + d_k over every per-layer labelling."""
    layers = [sorted(es) for es in G.layers]
    best = None
    per_layer_valid = []
    for i, es in enumerate(layers):
        opts = []
        for bits in range(1 << len(es)):
            S = frozenset(e for b, e in enumerate(es) if bits >> b & 1)
            if not stc_violations(G.layers[i], S, G.n):
                opts.append(S)
        per_layer_valid.append(opts)
    none = [frozenset()] * G.k
    for combo in itertools.product(*per_layer_valid):
        cost = G.m - sum(len(S) for S in combo) + pairwise_disagreements(G, combo, none)
        best = cost if best is None else min(best, cost)
    return best


# ---- STC with insertions ------------------------------------------------------

def _plus_states(G, i):
    """Every (S_i, N_i) for layer i that satisfies STC over E_i and N_i."""
    es = sorted(G.layers[i])
    non = [p for p in itertools.combinations(range(G.n), 2) if p not in G.layers[i]]
    out = []
    for sbits in range(1 << len(es)):
        S = frozenset(e for b, e in enumerate(es) if sbits >> b & 1)
        for nbits in range(1 << len(non)):
            N = frozenset(p for b, p in enumerate(non) if nbits >> b & 1)
            if not stc_violations(G.layers[i] | N, S, G.n):
                out.append((S, N))
    return out


def literal_min_ml_stc_plus(G, variant=False):
    """Exhaustive optimum with new weak edges, over all per-layer choices.

    With ``variant`` every inserted pair must also be inserted in each other
    layer where it closes a wedge of the existing edges.
    """
    states = [_plus_states(G, i) for i in range(G.k)]
    closes = [{uw for _, uw in triple_scan_wedges(G.layers[i], G.n)} for i in range(G.k)]
    best = None
    for combo in itertools.product(*states):
        strong = [S for S, _ in combo]
        inserted = [N for _, N in combo]
        if variant:
            ok = all(e in inserted[j] for i in range(G.k) for e in inserted[i]
                     for j in range(G.k) if j != i and e in closes[j])
            if not ok:
                continue
        cost = (G.m - sum(len(S) for S in strong) + sum(len(N) for N in inserted)
                + pairwise_disagreements(G, strong, inserted))
        best = cost if best is None else min(best, cost)
    return best


def coupled_variant_min(G):
    """Optimum when every weak pair is also inserted wherever it closes a wedge.

    Enumerates consistent strong sets T; a pair is weak if it exists outside
    T or closes a wedge with two strong legs.  Each weak pair is paid once
    per layer holding it and once per layer where it closes any wedge.
    """
    edges = sorted(G.aggregated)
    closes = [{uw for _, uw in triple_scan_wedges(G.layers[i], G.n)} for i in range(G.k)]
    best = None
    for bits in range(1 << len(edges)):
        T = {e for b, e in enumerate(edges) if bits >> b & 1}
        weak = set(edges) - T
        ok = True
        for i in range(G.k):
            for v, (u, w) in triple_scan_wedges(G.layers[i], G.n):
                if pair(u, v) in T and pair(v, w) in T:
                    if (u, w) in T:
                        ok = False
                    weak.add((u, w))
        if not ok:
            continue
        cost = sum(sum(1 for i in range(G.k) if e in G.layers[i]) +
                   sum(1 for i in range(G.k) if e in closes[i]) for e in weak)
        best = cost if best is None else min(best, cost)
    return best


def consistent_variant_min(G):
    """Variant optimum restricted to consistent strong sets T.

    For fixed T the inserted pairs are the closing pairs of wedges with two
    strong legs, closed under "inserted somewhere implies inserted in every
    layer where it closes a wedge"; no inserted pair may be strong.
    """
    edges = sorted(G.aggregated)
    mult = [bin(G.aggregated[e]).count("1") for e in edges]
    wedges = [sorted(triple_scan_wedges(G.layers[i], G.n)) for i in range(G.k)]
    closes = [{uw for _, uw in wedges[i]} for i in range(G.k)]
    best = [G.m]
    T = set()

    def leaf(cost):
        need = {uw for i in range(G.k) for v, uw in wedges[i]
                if pair(v, uw[0]) in T and pair(v, uw[1]) in T}
        if need & T:
            return
        total = cost + sum(sum(1 for i in range(G.k) if g in closes[i]) for g in need)
        best[0] = min(best[0], total)

    def rec(j, cost):
        if cost >= best[0]:
            return
        if j == len(edges):
            leaf(cost)
            return
        T.add(edges[j])
        rec(j + 1, cost)
        T.discard(edges[j])
        rec(j + 1, cost + mult[j])

    rec(0, 0)
    return best[0]


# ---- covers -------------------------------------------------------------------

def subset_min_cover(weights, edges):
    nodes = list(weights)
    best = None
    for r in range(len(nodes) + 1):
        for combo in itertools.combinations(nodes, r):
            chosen = set(combo)
            if all(any(x in chosen for x in e) for e in edges):
                w = sum((weights[x] for x in combo), 0)
                best = w if best is None else min(best, w)
    return best


# ---- 0/1 programs ------------------------------------------------------------

def parse_lp(text):
    """Parse the LP subset we write: returns (sense, objective, rows, binaries)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("\\")]
    sense = lines[0].lower()
    section = None
    objective, rows, binaries = {}, [], []

    def terms(expr):
        toks = expr.split()
        out, sign, coef = {}, 1, 1
        for t in toks:
            if t in "+-":
                sign = 1 if t == "+" else -1
            elif t.lstrip("-").isdigit():
                coef = int(t)
            else:
                out[t] = out.get(t, 0) + sign * coef
                sign, coef = 1, 1
        return out

    for ln in lines[1:]:
        low = ln.lower()
        if low in ("subject to", "binary", "end"):
            section = low
            continue
        if section is None:
            objective = terms(ln.split(":", 1)[1])
        elif section == "subject to":
            name, body = ln.split(":", 1)
            for op in ("<=", ">=", "="):
                if op in body:
                    lhs, rhs = body.split(op)
                    rows.append((name, terms(lhs), op, int(rhs)))
                    break
        elif section == "binary":
            binaries.append(ln)
    return sense, objective, rows, binaries


def solve_binary_program(sense, objective, rows, binaries):
    """Optimum of a 0/1 program by depth-first enumeration of assignments.

    A partial assignment is abandoned when some row can no longer be met
    whatever values the free variables take, or when even the best values of
    the free variables cannot beat the incumbent.  Every complete assignment
    that survives is evaluated.
    """
    var_rows = {v: [] for v in binaries}
    for r, (_, t, _, _) in enumerate(rows):
        for v in t:
            var_rows[v].append(r)
    order = sorted(binaries, key=lambda v: -len(var_rows[v]))
    value = {}
    sign = 1 if sense == "minimize" else -1
    best = [None]
    # sense-adjusted objective: minimise sum of sign * c
    adj = {v: sign * c for v, c in objective.items()}

    def optimistic():
        return sum(c * value[v] if v in value else min(c, 0) for v, c in adj.items())

    def feasible_row(r):
        _, t, op, rhs = rows[r]
        lo = hi = 0
        for v, c in t.items():
            if v in value:
                lo += c * value[v]
                hi += c * value[v]
            elif c > 0:
                hi += c
            else:
                lo += c
        if op == "<=":
            return lo <= rhs
        if op == ">=":
            return hi >= rhs
        return lo <= rhs <= hi

    def rec(j):
        if j == len(order):
            obj = sum(c * value[v] for v, c in objective.items())
            if best[0] is None or sign * obj < sign * best[0]:
                best[0] = obj
            return
        if best[0] is not None and optimistic() >= sign * best[0]:
            return
        v = order[j]
        for b in (0, 1):
            value[v] = b
            if all(feasible_row(r) for r in var_rows[v]):
                rec(j + 1)
            del value[v]

    rec(0)
    return best[0]


def lp_optimum(text):
    return solve_binary_program(*parse_lp(text))


# ---- corpora ------------------------------------------------------------------

def corpus(count, n_values, k_values, p_values=(0.2, 0.4, 0.6), modes=("er", "correlated"), seed0=0):
    """Deterministic list of ``count`` random graphs cycling over parameters."""
    grid = list(itertools.product(modes, p_values, k_values, n_values))
    out = []
    for j in range(count):
        mode, p, k, n = grid[j % len(grid)]
        seed = seed0 + j
        G = erdos_renyi(n, k, p, seed) if mode == "er" else correlated(n, k, p, seed, 0.2)
        out.append(((mode, n, k, p, seed), G))
    return out




def case_id(value):
    """pytest id for (parameters, graph) corpus entries."""
    return "-".join(map(str, value)) if isinstance(value, tuple) else "G"
