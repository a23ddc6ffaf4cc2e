"""Random and exhaustive generators: uniform labelled trees and forests, G(n,p).

All samplers draw from a named, splittable RNG (PCG64 seeded through a
SeedSequence spawn key), so replicate i of a run is reproducible bit-for-bit
from (seed, stream=i) alone.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb, isqrt
from typing import Iterator

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class SeededRng:
    """Reproducible RNG handle; stream = replicate index."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(seq))


def _randbelow(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound) for arbitrary-precision bounds."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    bits = bound.bit_length()
    words = (bits + 63) // 64
    excess = words * 64 - bits
    while True:
        r = 0
        for w in rng.integers(0, 2**64, size=words, dtype=np.uint64):
            r = (r << 64) | int(w)
        r >>= excess
        if r < bound:
            return r


def prufer_decode(seq: list[int] | tuple[int, ...]) -> Graph:
    """Decode a Pruefer sequence of length n-2 into the labelled tree on n >= 2 vertices."""
    n = len(seq) + 2
    deg = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"sequence entry {x} out of range for n={n}")
        deg[x] += 1
    edges = []
    ptr = 0  # smallest vertex never yet used as the removed leaf
    leaf = -1
    for x in seq:
        if leaf < 0:
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
            ptr += 1
        edges.append((leaf, x))
        deg[x] -= 1
        # chain directly when x became a leaf below the scan pointer
        leaf = x if deg[x] == 1 and x < ptr else -1
    if leaf < 0:
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
    edges.append((leaf, n - 1))
    return Graph.from_edges(n, edges)


def sample_uniform_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labelled tree on n vertices (single vertex for n=1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2)
    return prufer_decode([int(x) for x in seq])


def enumerate_trees(n: int) -> Iterator[Graph]:
    """All n^(n-2) labelled trees on n vertices, 2 <= n <= 8."""
    if not 2 <= n <= 8:
        raise ValueError(f"enumeration supported for 2 <= n <= 8, got {n}")
    for seq in product(range(n), repeat=n - 2):
        yield prufer_decode(seq)


@dataclass(frozen=True)
class ForestCountTable:
    """Exact counts: t[k] labelled trees on k vertices, f[m] labelled forests on m."""

    t: tuple[int, ...]
    f: tuple[int, ...]
    _cums: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.f) - 1

    def component_cumweights(self, m: int) -> list[int]:
        """Cumulative weights for the size k of the component holding the
        smallest label, listed for k = m down to 1 (heaviest sizes first)."""
        cached = self._cums.get(m)
        if cached is None:
            acc = 0
            cached = []
            for k in range(m, 0, -1):
                acc += comb(m - 1, k - 1) * self.t[k] * self.f[m - k]
                cached.append(acc)
            if acc != self.f[m]:
                raise AssertionError("forest count recurrence violated")
            self._cums[m] = cached
        return cached


@lru_cache(maxsize=8)
def forest_counts(n: int) -> ForestCountTable:
    """Big-integer tables t_k = k^(k-2) and the forest recurrence f_0..f_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t = [0] * (n + 1)
    for k in range(1, n + 1):
        t[k] = 1 if k == 1 else k ** (k - 2)
    f = [1] + [0] * n
    for m in range(1, n + 1):
        f[m] = sum(comb(m - 1, k - 1) * t[k] * f[m - k] for k in range(1, m + 1))
    return ForestCountTable(tuple(t), tuple(f))


def sample_uniform_forest(
    n: int, rng: np.random.Generator, table: ForestCountTable | None = None
) -> Graph:
    """Uniform labelled forest on n vertices.

    Peels off the component containing the smallest unused label, whose size k
    has probability C(m-1,k-1) t_k f_{m-k} / f_m among m remaining labels; the
    component itself is then a uniform tree on its label set.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if table is None:
        table = forest_counts(n)
    if n > table.size:
        raise ValueError(f"n={n} exceeds precomputed table size {table.size}")
    available = list(range(n))
    edges: list[tuple[int, int]] = []
    while available:
        m = len(available)
        cums = table.component_cumweights(m)
        r = _randbelow(rng, table.f[m])
        k = m - bisect_right(cums, r)
        anchor = available[0]
        rest = available[1:]
        if k == 1:
            members = [anchor]
            available = rest
        else:
            picks = sorted(int(i) for i in rng.choice(m - 1, size=k - 1, replace=False))
            members = [anchor] + [rest[i] for i in picks]
            chosen = set(picks)
            available = [v for i, v in enumerate(rest) if i not in chosen]
            if k == 2:
                edges.append((members[0], members[1]))
            else:
                seq = [int(x) for x in rng.integers(0, k, size=k - 2)]
                for a, b in prufer_decode(seq).edges():
                    edges.append((members[a], members[b]))
    return Graph.from_edges(n, edges)


def _pair_from_index(idx: int, n: int, total: int) -> tuple[int, int]:
    # invert the row-major upper-triangle enumeration of pairs (i < j)
    rev = total - 1 - idx
    t = (isqrt(8 * rev + 1) - 1) // 2
    i = n - 2 - t
    j = idx - i * (2 * n - i - 1) // 2 + i + 1
    return i, j


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n,p): each of the C(n,2) edges present independently."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    total = n * (n - 1) // 2
    m = int(rng.binomial(total, p)) if total > 0 else 0
    if m == 0:
        return Graph.from_edges(n, [])
    if m == total:
        chosen = range(total)
    elif m <= total // 2:
        picked: set[int] = set()
        while len(picked) < m:
            batch = rng.integers(0, total, size=m - len(picked))
            picked.update(int(x) for x in batch)
        chosen = picked
    else:
        excluded: set[int] = set()
        while len(excluded) < total - m:
            batch = rng.integers(0, total, size=total - m - len(excluded))
            excluded.update(int(x) for x in batch)
        chosen = (i for i in range(total) if i not in excluded)
    edges = [_pair_from_index(idx, n, total) for idx in chosen]
    return Graph.from_edges(n, edges)
