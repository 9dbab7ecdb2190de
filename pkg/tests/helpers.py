"""Shared fixtures-by-import: cached triangulation lists and small graphs."""

import random
from functools import lru_cache

from rbtri.graph import Graph
from rbtri.triangulations import generate, oracle_generate


@lru_cache(maxsize=None)
def triangulations(n):
    return tuple(generate(n))


@lru_cache(maxsize=None)
def oracle(n):
    return tuple(oracle_generate(n))


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_subgraph(rng, g, keep):
    return g.edge_subgraph(sum(1 << i for i in range(g.m) if rng.random() < keep))


def small_triangulation_subgraphs(seed, count, max_edges):
    """Random spanning subgraphs of members of T_5..T_7 with few edges."""
    rng = random.Random(seed)
    pool = [t for n in (5, 6, 7) for t in triangulations(n)]
    out = []
    while len(out) < count:
        t = rng.choice(pool)
        idx = rng.sample(range(t.graph.m), rng.randint(3, min(max_edges, t.graph.m)))
        out.append(t.graph.edge_subgraph(sum(1 << i for i in idx)))
    return out
