"""Edge colorings of complete graphs and the extremal constructions."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from ramcover.errors import InvariantError
from ramcover.graph import Graph

MAX_COLORS = 255


def pair_index(n: int, x: int, y: int) -> int:
    """Position of pair {x,y} (1-based) in upper-triangular row-major order."""
    if x > y:
        x, y = y, x
    return (x - 1) * n - (x - 1) * x // 2 + (y - x - 1)


def pairs(n: int) -> Iterable[tuple[int, int]]:
    return itertools.combinations(range(1, n + 1), 2)


@dataclass(frozen=True)
class EdgeColoring:
    """A t-coloring of K_n.

    ``colors`` lists the color of every pair in the order
    (1,2), (1,3), ..., (1,n), (2,3), ... with colors in 1..t. Construction
    does not validate; use :func:`validate` or :meth:`checked`.
    """

    n: int
    t: int
    colors: bytes

    @classmethod
    def from_function(cls, n: int, t: int, color: Callable[[int, int], int]) -> EdgeColoring:
        return cls(n, t, bytes(color(x, y) for x, y in pairs(n)))

    @classmethod
    def monochromatic(cls, n: int, t: int = 1, color: int = 1) -> EdgeColoring:
        return cls(n, t, bytes([color]) * comb(n, 2))

    def checked(self) -> EdgeColoring:
        problems = validate(self)
        if problems:
            raise InvariantError("; ".join(problems))
        return self

    def color(self, x: int, y: int) -> int:
        return self.colors[pair_index(self.n, x, y)]

    @cached_property
    def color_adj(self) -> tuple[tuple[int, ...], ...]:
        """``color_adj[c][v]``: bitset of neighbors of v along color-c edges."""
        adj = [[0] * (self.n + 1) for _ in range(self.t + 1)]
        for (x, y), c in zip(pairs(self.n), self.colors):
            adj[c][x] |= 1 << y
            adj[c][y] |= 1 << x
        return tuple(tuple(row) for row in adj)

    def subgraph(self, colors: Iterable[int]) -> Graph:
        """Spanning graph on 1..n whose edges are the pairs colored within ``colors``."""
        adj = [0] * (self.n + 1)
        for c in set(colors):
            if 1 <= c <= self.t:
                row = self.color_adj[c]
                for v in range(1, self.n + 1):
                    adj[v] |= row[v]
        return Graph(self.n, tuple(adj))

    def color_graph(self, c: int) -> Graph:
        return Graph(self.n, self.color_adj[c])

    def induced(self, vertices: Sequence[int]) -> EdgeColoring:
        """Coloring of the complete graph on ``vertices``, relabeled 1..len in the given order."""
        return EdgeColoring(
            len(vertices),
            self.t,
            bytes(self.color(vertices[i], vertices[j]) for i, j in itertools.combinations(range(len(vertices)), 2)),
        )

    def extend(self, new_colors: Sequence[int]) -> EdgeColoring:
        """Add vertex n+1 whose edge to vertex i has color ``new_colors[i-1]``."""
        n = self.n
        if len(new_colors) != n:
            raise InvariantError(f"extension needs {n} colors, got {len(new_colors)}")
        out = bytearray()
        pos = 0
        for x in range(1, n + 1):
            row = n - x
            out += self.colors[pos:pos + row]
            out.append(new_colors[x - 1])
            pos += row
        return EdgeColoring(n + 1, self.t, bytes(out))

    def relabel(self, perm: Sequence[int]) -> EdgeColoring:
        """Image under the vertex map v -> perm[v-1]."""
        inv = [0] * (self.n + 1)
        for v, w in enumerate(perm, start=1):
            inv[w] = v
        return self.induced(inv[1:])

    def recolor(self, perm: Sequence[int]) -> EdgeColoring:
        """Image under the color map c -> perm[c-1]."""
        table = bytes([0] + list(perm)) + bytes(256 - len(perm) - 1)
        return EdgeColoring(self.n, self.t, self.colors.translate(table))

    def to_json(self) -> dict:
        return {"n": self.n, "t": self.t, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data: dict) -> EdgeColoring:
        if not isinstance(data, dict):
            raise InvariantError("coloring JSON must be an object")
        for key in ("n", "t", "colors"):
            if key not in data:
                raise InvariantError(f"coloring JSON is missing key {key!r}")
        n, t, colors = data["n"], data["t"], data["colors"]
        if not (isinstance(n, int) and isinstance(t, int)) or n < 1 or not 1 <= t <= MAX_COLORS:
            raise InvariantError(f"need integers n >= 1 and 1 <= t <= {MAX_COLORS}, got n={n!r}, t={t!r}")
        if not isinstance(colors, list):
            raise InvariantError("'colors' must be a list")
        if len(colors) != comb(n, 2):
            raise InvariantError(f"'colors' has length {len(colors)}, expected C(n,2) = {comb(n, 2)}")
        for i, c in enumerate(colors):
            if not isinstance(c, int) or isinstance(c, bool) or not 1 <= c <= t:
                x, y = _pair_at(n, i)
                raise InvariantError(f"pair ({x},{y}) has color {c!r}, expected an integer in 1..{t}")
        return cls(n, t, bytes(colors))


def _pair_at(n: int, index: int) -> tuple[int, int]:
    for x in range(1, n):
        row = n - x
        if index < row:
            return x, x + 1 + index
        index -= row
    raise IndexError(index)


def validate(c: EdgeColoring) -> list[str]:
    """Diagnostics for every invariant violation; an empty list means valid."""
    problems = []
    if c.n < 1:
        problems.append(f"n must be >= 1, got {c.n}")
    if c.t < 1:
        problems.append(f"t must be >= 1, got {c.t}")
    if problems:
        return problems
    expected = comb(c.n, 2)
    if len(c.colors) < expected:
        first = _pair_at(c.n, len(c.colors))
        problems.append(f"missing colors for {expected - len(c.colors)} pairs, starting at pair {first}")
    elif len(c.colors) > expected:
        problems.append(f"{len(c.colors) - expected} surplus color entries beyond C(n,2) = {expected}")
    for i, col in enumerate(c.colors[:expected]):
        if not 1 <= col <= c.t:
            x, y = _pair_at(c.n, i)
            problems.append(f"pair ({x},{y}) has color {col}, outside 1..{c.t}")
    return problems


def random_coloring(n: int, t: int, rng: np.random.Generator) -> EdgeColoring:
    """Uniform random t-coloring: every pair gets an independent uniform color."""
    return EdgeColoring(n, t, rng.integers(1, t + 1, size=comb(n, 2), dtype=np.uint8).tobytes())


# -- partition-vector colorings ------------------------------------------------


def partition_coloring(parts: Sequence[int]) -> EdgeColoring:
    """Coloring [p_1,...,p_t]: blocks A_j of consecutive vertices, edge xy gets
    the least j such that A_j meets {x, y}. Zero parts are allowed."""
    parts = list(parts)
    if not parts:
        raise InvariantError("partition vector must have at least one coordinate")
    if any(not isinstance(p, int) or p < 0 for p in parts):
        raise InvariantError(f"partition vector entries must be nonnegative integers: {parts}")
    if sum(parts) == 0:
        raise InvariantError("partition vector has all parts zero")
    block = [0]
    for j, p in enumerate(parts, start=1):
        block.extend([j] * p)
    n = len(block) - 1
    return EdgeColoring(n, len(parts), bytes(min(block[x], block[y]) for x, y in pairs(n)))


def extremal_main_parts(t: int, k: int) -> list[int]:
    """[p, 2p, ..., 2^(t-2) p, q] on N = 2k - 1 + p vertices, p = floor((k-1)/(2^(t-1)-1))."""
    if t < 2:
        raise InvariantError(f"the extremal construction needs t >= 2, got t={t}")
    if k < 1:
        raise InvariantError(f"k must be >= 1, got k={k}")
    p = (k - 1) // (2 ** (t - 1) - 1)
    big_n = 2 * k - 1 + p
    q = big_n - (2 ** (t - 1) - 1) * p
    return [2**i * p for i in range(t - 1)] + [q]


def extremal_main_coloring(t: int, k: int) -> EdgeColoring:
    return partition_coloring(extremal_main_parts(t, k))


def cockayne_lorimer_parts(t: int, p: int) -> list[int]:
    if t < 1:
        raise InvariantError(f"t must be >= 1, got t={t}")
    if p < 1:
        raise InvariantError(f"p must be >= 1, got p={p}")
    return [p] * (t - 1) + [2 * p + 1]


def cockayne_lorimer_coloring(t: int, p: int) -> EdgeColoring:
    """[p, ..., p, 2p+1] on (t+1)p + 1 vertices: no monochromatic matching of size p+1."""
    return partition_coloring(cockayne_lorimer_parts(t, p))


# -- blow-up coloring with bipartite crossing classes ---------------------------


def _bipartite(edges: list[tuple[int, int]]) -> bool:
    side: dict[int, int] = {}
    nbrs: dict[int, list[int]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    for start in nbrs:
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def crossing_assignment(t: int) -> tuple[dict[tuple[int, int], int], str]:
    """Color for each pair of parts {a, b}, and the method used to find it.

    Color c never touches part c and each color's pairs form a bipartite
    graph on the parts. Odd t uses the round-robin factorization
    a + b = 2c (mod t); even t falls back to a depth-first search.
    """
    if t < 3:
        raise InvariantError(f"crossing rules cannot be met for t={t}; need t >= 3")
    part_pairs = list(itertools.combinations(range(1, t + 1), 2))
    if t % 2 == 1:
        half = (t + 1) // 2  # inverse of 2 mod t
        assign = {}
        for a, b in part_pairs:
            c = (a + b) * half % t
            assign[(a, b)] = c if c else t
        return assign, "round-robin"

    classes: dict[int, list[tuple[int, int]]] = {c: [] for c in range(1, t + 1)}
    assign: dict[tuple[int, int], int] = {}

    def place(i: int) -> bool:
        if i == len(part_pairs):
            return True
        a, b = part_pairs[i]
        for c in range(1, t + 1):
            if c in (a, b):
                continue
            classes[c].append((a, b))
            if _bipartite(classes[c]):
                assign[(a, b)] = c
                if place(i + 1):
                    return True
            classes[c].pop()
        return False

    if not place(0):
        raise InvariantError(f"no crossing assignment found for t={t}")
    return assign, "search"


def nb_coloring(t: int, part_size: int) -> EdgeColoring:
    """t equal parts of consecutive vertices; inside part i color i; crossing
    edges between two parts share one color chosen by :func:`crossing_assignment`.
    The rules are re-checked on the result before returning."""
    if part_size < 1:
        raise InvariantError(f"part_size must be >= 1, got {part_size}")
    assign, _ = crossing_assignment(t)

    def color(x: int, y: int) -> int:
        a, b = (x - 1) // part_size + 1, (y - 1) // part_size + 1
        return a if a == b else assign[(a, b)]

    c = EdgeColoring.from_function(t * part_size, t, color)
    problems = nb_rule_violations(c, part_size)
    if problems:
        raise InvariantError("; ".join(problems))
    return c


def nb_rule_violations(c: EdgeColoring, part_size: int) -> list[str]:
    """Check both crossing rules on a blow-up coloring with consecutive parts."""
    problems = []
    part = [0] + [(v - 1) // part_size + 1 for v in range(1, c.n + 1)]
    crossing: dict[int, list[tuple[int, int]]] = {}
    for x, y in pairs(c.n):
        col = c.color(x, y)
        if part[x] == part[y]:
            if col != part[x]:
                problems.append(f"edge ({x},{y}) inside part {part[x]} has color {col}")
            continue
        if col in (part[x], part[y]):
            problems.append(f"crossing edge ({x},{y}) of color {col} touches part {col}")
        crossing.setdefault(col, []).append((x, y))
    for col, edges in sorted(crossing.items()):
        if not _bipartite(edges):
            problems.append(f"crossing edges of color {col} are not bipartite")
    return problems


# -- file IO ------------------------------------------------------------------


def read_coloring(path: str | Path) -> EdgeColoring:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvariantError(f"{path}: not valid JSON ({exc})") from None
    return EdgeColoring.from_json(data)


def write_coloring(c: EdgeColoring, path: str | Path) -> None:
    c.checked()
    Path(path).write_text(json.dumps(c.to_json(), sort_keys=True) + "\n")
