"""Shared oracles and generators for the test suite."""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np
from hypothesis import strategies as st

from ramcover.colorings import EdgeColoring
from ramcover.graph import Graph


def random_graph(n: int, rng: np.random.Generator, density: float | None = None) -> Graph:
    p = rng.random() if density is None else density
    return Graph.from_edges(n, [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p])


def all_graphs(n: int):
    allpairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(allpairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(allpairs) if bits >> i & 1])


def all_colorings(n: int, t: int):
    m = n * (n - 1) // 2
    for colors in itertools.product(range(1, t + 1), repeat=m):
        yield EdgeColoring(n, t, bytes(colors))


def burnside_classes(n: int, t: int, with_colors: bool) -> int:
    """Orbit count of t-colorings of K_n under S_n (and S_t when asked).

    For a pair (sigma, tau) the fixed colorings are counted per cycle of
    sigma acting on edges: a cycle of length L admits the colors whose
    tau-orbit length divides L.
    """
    def cycle_lengths(perm):
        seen, out = set(), []
        for start in range(len(perm)):
            if start in seen:
                continue
            length, x = 0, start
            while x not in seen:
                seen.add(x)
                x = perm[x]
                length += 1
            out.append(length)
        return out

    edges = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(edges)}
    edge_cycles = Counter()
    for sigma in itertools.permutations(range(n)):
        image = [index[tuple(sorted((sigma[a], sigma[b])))] for a, b in edges]
        edge_cycles[tuple(sorted(cycle_lengths(image)))] += 1
    total = 0
    for tau_cycles, tau_count in _cycle_types(t, with_colors):
        for lengths, mult in edge_cycles.items():
            fixed = 1
            for length in lengths:
                fixed *= sum(c for c in tau_cycles if length % c == 0)
            total += tau_count * mult * fixed
    denom = math.factorial(n) * (math.factorial(t) if with_colors else 1)
    assert total % denom == 0
    return total // denom


def _cycle_types(t: int, all_perms: bool):
    """(cycle lengths, number of permutations of S_t with that type)."""
    if not all_perms:
        yield [1] * t, 1
        return

    def partitions(rest: int, top: int):
        if rest == 0:
            yield []
            return
        for part in range(min(rest, top), 0, -1):
            for tail in partitions(rest - part, part):
                yield [part] + tail

    for lengths in partitions(t, t):
        count = math.factorial(t)
        for length, mult in Counter(lengths).items():
            count //= length**mult * math.factorial(mult)
        yield lengths, count


@st.composite
def colorings(draw, min_n: int = 1, max_n: int = 8, min_t: int = 1, max_t: int = 4):
    n = draw(st.integers(min_n, max_n))
    t = draw(st.integers(min_t, max_t))
    m = n * (n - 1) // 2
    colors = draw(st.lists(st.integers(1, t), min_size=m, max_size=m))
    return EdgeColoring(n, t, bytes(colors))


@st.composite
def graphs(draw, max_n: int = 10):
    n = draw(st.integers(0, max_n))
    allpairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(allpairs), max_size=len(allpairs)))
    return Graph.from_edges(n, [e for e, keep in zip(allpairs, chosen) if keep])

