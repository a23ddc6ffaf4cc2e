"""Shared test utilities: chi-square goodness of fit, small graph builders."""

from __future__ import annotations

from scipy.stats import chi2

from mdim.graph import Graph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(*graphs: Graph) -> Graph:
    n = 0
    edges = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges())
        n += g.n
    return Graph.from_edges(n, edges)


def chi_square_ok(observed: dict, probs: dict, total: int, alpha: float = 0.01) -> bool:
    """Goodness-of-fit check; cells with expected count < 5 are pooled."""
    cells = sorted(probs, key=lambda k: probs[k], reverse=True)
    pooled: list[tuple[float, float]] = []
    obs_acc = exp_acc = 0.0
    for key in cells:
        obs_acc += observed.get(key, 0)
        exp_acc += probs[key] * total
        if exp_acc >= 5:
            pooled.append((obs_acc, exp_acc))
            obs_acc = exp_acc = 0.0
    if exp_acc > 0 and pooled:
        o, e = pooled[-1]
        pooled[-1] = (o + obs_acc, e + exp_acc)
    stat = sum((o - e) ** 2 / e for o, e in pooled)
    df = len(pooled) - 1
    if df < 1:
        return True
    return stat <= chi2.ppf(1 - alpha, df)
