"""Seeded random multilayer graphs for tests and benchmarks."""

from __future__ import annotations

import itertools
import math
import random

from .graph import MultilayerGraph

ER, CORRELATED = "er", "correlated"


def _check(n: int, k: int, p: float) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")


def _er_layer(rng: random.Random, n: int, p: float) -> set[tuple[int, int]]:
    return {e for e in itertools.combinations(range(n), 2) if rng.random() < p}


def _build(n, layers) -> MultilayerGraph:
    labels = tuple(str(v) for v in range(n))
    names = tuple(f"L{i + 1}" for i in range(len(layers)))
    return MultilayerGraph(labels, names, tuple(frozenset(es) for es in layers))


def erdos_renyi(n: int, k: int, p: float, seed: int) -> MultilayerGraph:
    """k independent G(n, p) layers on nodes 0..n-1."""
    _check(n, k, p)
    rng = random.Random(seed)
    return _build(n, [_er_layer(rng, n, p) for _ in range(k)])


def correlated(n: int, k: int, p: float, seed: int, epsilon: float = 0.1) -> MultilayerGraph:
    """A G(n, p) base layer plus k-1 perturbed copies.

    Each copy toggles floor(t/2) random node pairs, t = ceil(epsilon * m_base),
    so any two layers differ in at most t pairs.
    """
    _check(n, k, p)
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    rng = random.Random(seed)
    base = _er_layer(rng, n, p)
    flips = math.ceil(epsilon * len(base)) // 2
    pairs = list(itertools.combinations(range(n), 2))
    layers = [base]
    for _ in range(k - 1):
        layer = set(base)
        for e in rng.sample(pairs, min(flips, len(pairs))):
            layer ^= {e}
        layers.append(layer)
    return _build(n, layers)


def generate(mode: str, n: int, k: int, p: float, seed: int, epsilon: float = 0.1) -> MultilayerGraph:
    if mode == ER:
        return erdos_renyi(n, k, p, seed)
    if mode == CORRELATED:
        return correlated(n, k, p, seed, epsilon)
    raise ValueError(f"unknown generator mode {mode!r}")
