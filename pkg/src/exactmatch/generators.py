"""Seeded instance generators.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``; the same
model, parameters and seed always give the same bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .graph import ColoredGraph
from .io import Instance, render_instance

__all__ = ["MODELS", "generate", "generate_instance"]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def _prob(params, key, default=None):
    x = float(params.get(key, default))
    if not 0.0 <= x <= 1.0:
        raise InputError(f"{key} = {x} is not a probability")
    return x


def _size(params, key, default=None, minimum=1):
    if key not in params and default is None:
        raise InputError(f"missing parameter {key}")
    x = int(params.get(key, default))
    if x < minimum:
        raise InputError(f"{key} = {x} is below {minimum}")
    return x


def _colors(rng, count, redprob):
    return ["r" if x else "b" for x in (rng.random(count) < redprob)]


def _random_bipartite(params, rng):
    n_a, n_b = _size(params, "nA"), _size(params, "nB")
    p, rp = _prob(params, "p", 0.5), _prob(params, "redprob", 0.5)
    pairs = [(u, v) for u in range(1, n_a + 1) for v in range(n_a + 1, n_a + n_b + 1)]
    keep = rng.random(len(pairs)) < p
    pairs = [e for e, x in zip(pairs, keep) if x]
    cols = _colors(rng, len(pairs), rp)
    g = ColoredGraph.from_edges(n_a + n_b, [(u, v, c) for (u, v), c in zip(pairs, cols)], n_a=n_a)
    return g, int(params.get("k", min(n_a, n_b) // 2))


def _complete(params, rng):
    n = _size(params, "n")
    rp = _prob(params, "redprob", 0.5)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    cols = _colors(rng, len(pairs), rp)
    return ColoredGraph.from_edges(n, [(u, v, c) for (u, v), c in zip(pairs, cols)]), int(params.get("k", n // 4))


def _complete_bipartite(params, rng):
    n_a = _size(params, "nA")
    return _random_bipartite({"nA": n_a, "nB": n_a, "p": 1.0, "redprob": params.get("redprob", 0.5),
                              "k": params.get("k", n_a // 2)}, rng)


def _planted_em(params, rng):
    n, k = _size(params, "n", minimum=2), _size(params, "k", minimum=0)
    if n % 2 or 2 * k > n:
        raise InputError("planted-em needs even n and 0 <= k <= n/2")
    p, rp = _prob(params, "p", 0.5), _prob(params, "redprob", 0.5)
    perm = (rng.permutation(n) + 1).tolist()
    planted = {}
    red_slots = set(rng.choice(n // 2, size=k, replace=False).tolist())
    for i in range(n // 2):
        u, v = sorted((perm[2 * i], perm[2 * i + 1]))
        planted[(u, v)] = "r" if i in red_slots else "b"
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    keep = rng.random(len(pairs)) < p
    cols = _colors(rng, len(pairs), rp)
    edges = []
    for (u, v), x, c in zip(pairs, keep, cols):
        if (u, v) in planted:
            edges.append((u, v, planted[(u, v)]))
        elif x:
            edges.append((u, v, c))
    return ColoredGraph.from_edges(n, edges), k


MODELS = {
    "random-bipartite": _random_bipartite,
    "complete": _complete,
    "complete-bipartite": _complete_bipartite,
    "planted-em": _planted_em,
}


def generate_instance(model: str, params: dict, seed: int = 0) -> Instance:
    try:
        fn = MODELS[model]
    except KeyError:
        raise InputError(f"unknown model {model!r}; choose from {', '.join(MODELS)}") from None
    g, k = fn(params, _rng(seed))
    if k < 0:
        raise InputError("k must be non-negative")
    return Instance("em", g, k)


def generate(model: str, params: dict, seed: int = 0) -> str:
    """Instance text for ``model`` with ``params`` (strings or numbers)."""
    head = f"{model} " + " ".join(f"{a}={b}" for a, b in sorted(params.items())) + f" seed={seed}"
    return render_instance(generate_instance(model, params, seed), comment=head.strip())
