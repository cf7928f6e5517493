"""Random generators and independent reference implementations for tests."""

from __future__ import annotations

import random

from cigmine import Cig, DataSet, TemporalEdge, TemporalNetwork


def random_network(rng: random.Random, name: str = "g", max_edges: int = 8, n_vertices: int = 5,
                   attrs: str = "xy", t_max: int = 6, d_max: int = 4, min_edges: int = 1) -> TemporalNetwork:
    m = rng.randint(min_edges, max_edges)
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n_vertices), 2)
        edges.append(TemporalEdge(f"v{u}", f"v{v}", rng.choice(attrs), rng.choice("c" if len(attrs) < 3 else "cd"),
                                  rng.choice(attrs), float(rng.randint(0, t_max)), float(rng.randint(0, d_max))))
    return TemporalNetwork.from_edges(edges, name)


def random_dataset(rng: random.Random, n_min: int = 3, n_max: int = 10, **kw) -> DataSet:
    n = rng.randint(n_min, n_max)
    return DataSet(tuple(random_network(rng, f"g{i:02d}", **kw) for i in range(n)))


def pairwise_cig_edges(network: TemporalNetwork) -> set[tuple[int, int, float]]:
    """All-pairs CIG edge set: overlap as closed intervals plus a shared vertex."""
    out = set()
    es = network.edges
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            a, b = es[i], es[j]
            if not {a.u, a.v} & {b.u, b.v}:
                continue
            if a.start + a.duration < b.start or b.start + b.duration < a.start:
                continue
            out.add((i, j, b.start - a.start))
    return out


def make_cig(labels, edges) -> Cig:
    g = Cig()
    for lab in labels:
        g.add_node(lab)
    for f, t, d in edges:
        g.add_edge(f, t, d)
    return g


def permute_cig(g: Cig, perm: list[int]) -> Cig:
    """Node ``x`` of ``g`` becomes node ``perm[x]``."""
    labels = [None] * len(g)
    for x, lab in enumerate(g.labels):
        labels[perm[x]] = lab
    return make_cig(labels, [(perm[f], perm[t], d) for f, t, d in g.edges])


def weakly_connected(n: int, edges) -> bool:
    if n == 0:
        return False
    adj = {i: set() for i in range(n)}
    for f, t, _ in edges:
        adj[f].add(t)
        adj[t].add(f)
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == n
