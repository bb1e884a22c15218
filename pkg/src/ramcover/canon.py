"""Canonical codes and isomorph-free enumeration of complete-graph colorings.

A code lists the colors of a relabeled coloring in column order
(1,2), (1,3), (2,3), (1,4), ... so that fixing the first k vertices fixes a
prefix of the code. The canonical code is the least code over vertex orders
compatible with a color-refinement partition, found by branch and bound
with twin pruning. In ``vertex-color`` mode colors are additionally
renamed by first appearance along the code, which is the least image of a
code under color permutations.

Enumeration is orderly: each class at size n has a canonical parent at
size n-1 (delete the canonically last vertex), and a child is emitted only
from that parent. Shards split the parent list, so shard membership needs
no coordination.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from ramcover.colorings import EdgeColoring
from ramcover.errors import InvariantError, LimitExceeded

CANON_LIMIT = 12
DEFAULT_NODE_BUDGET = 10**9

VERTEX = "vertex"
VERTEX_COLOR = "vertex-color"
RAW = "raw"

_MODE_ALIASES = {
    "vertex": VERTEX,
    "vertex-only": VERTEX,
    "vertex-color": VERTEX_COLOR,
    "vertex-and-color": VERTEX_COLOR,
    "raw": RAW,
}


def normalize_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise InvariantError(f"unknown symmetry mode {mode!r}; use one of {sorted(_MODE_ALIASES)}") from None


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    mode: str


def _matrix(c: EdgeColoring) -> list[list[int]]:
    n = c.n
    m = [[0] * n for _ in range(n)]
    it = iter(c.colors)
    for x in range(n):
        for y in range(x + 1, n):
            m[x][y] = m[y][x] = next(it)
    return m


def _refine(m: list[list[int]], color_blind: bool) -> list[int]:
    n = len(m)
    labels = [0] * n
    count = 1
    while True:
        sigs = []
        for v in range(n):
            row = m[v]
            if color_blind:
                per: dict[int, list[int]] = {}
                for w in range(n):
                    if w != v:
                        per.setdefault(row[w], []).append(labels[w])
                sig = (labels[v], tuple(sorted(tuple(sorted(ls)) for ls in per.values())))
            else:
                sig = (labels[v], tuple(sorted((row[w], labels[w]) for w in range(n) if w != v)))
            sigs.append(sig)
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        labels = [rank[s] for s in sigs]
        if len(rank) == count:
            return labels
        count = len(rank)


def _twin_classes(m: list[list[int]]) -> list[int]:
    n = len(m)
    cls = list(range(n))
    for v in range(n):
        if cls[v] != v:
            continue
        for w in range(v + 1, n):
            if cls[w] == w and all(m[v][x] == m[w][x] for x in range(n) if x != v and x != w):
                cls[w] = v
    return cls


def canonical_form(c: EdgeColoring, mode: str = VERTEX) -> tuple[bytes, list[int]]:
    """Canonical code and a vertex order (1-based) attaining it."""
    mode = normalize_mode(mode)
    if mode == RAW:
        return bytes([c.n, c.t]) + c.colors, list(range(1, c.n + 1))
    if c.n > CANON_LIMIT:
        raise LimitExceeded(f"canonical form limited to n <= {CANON_LIMIT}, got n={c.n}")
    recolor = mode == VERTEX_COLOR
    n = c.n
    m = _matrix(c)
    labels = _refine(m, color_blind=recolor)
    slot = sorted(labels)
    twins = _twin_classes(m)
    best: list[int] = []
    best_order: list[int] = []
    updates = 0
    order: list[int] = []
    placed = [False] * n

    def rec(k: int, better: bool, code: list[int], rename: dict[int, int]) -> None:
        nonlocal best, best_order, updates
        if k == n:
            if better or not best_order:
                best = code.copy()
                best_order = order.copy()
                updates += 1
            return
        tried_twins = set()
        start = k * (k - 1) // 2
        for v in range(n):
            if placed[v] or labels[v] != slot[k] or twins[v] in tried_twins:
                continue
            tried_twins.add(twins[v])
            names = dict(rename) if recolor else rename
            chunk = []
            for u in order:
                col = m[u][v]
                if recolor:
                    col = names.setdefault(col, len(names) + 1)
                chunk.append(col)
            now_better = better
            if best_order and not better:
                ref = best[start:start + k]
                if chunk > ref:
                    continue
                now_better = chunk < ref
            placed[v] = True
            order.append(v)
            code.extend(chunk)
            seen_updates = updates
            rec(k + 1, now_better, code, names)
            if updates != seen_updates:
                # best now shares this node's prefix
                better = False
            del code[start:]
            order.pop()
            placed[v] = False

    rec(0, False, [], {})
    return bytes([n, c.t]) + bytes(best), [v + 1 for v in best_order]


def canonical_code(c: EdgeColoring, mode: str = VERTEX) -> CanonicalCode:
    """Code equal for two colorings iff they are equivalent under ``mode``'s group."""
    mode = normalize_mode(mode)
    if mode == RAW:
        raise InvariantError("canonical_code needs mode 'vertex' or 'vertex-color'")
    return CanonicalCode(canonical_form(c, mode)[0], mode)


def _children(parent: EdgeColoring, parent_code: bytes, mode: str) -> Iterator[tuple[EdgeColoring, bytes]]:
    seen: set[bytes] = set()
    for ext in itertools.product(range(1, parent.t + 1), repeat=parent.n):
        child = parent.extend(ext)
        code, order = canonical_form(child, mode)
        if code in seen:
            continue
        if canonical_form(child.induced(order[:-1]), mode)[0] != parent_code:
            continue
        seen.add(code)
        yield child, code


@lru_cache(maxsize=64)
def _classes(n: int, t: int, mode: str) -> tuple[tuple[EdgeColoring, bytes], ...]:
    if n == 1:
        c = EdgeColoring(1, t, b"")
        return ((c, canonical_form(c, mode)[0]),)
    out = []
    for parent, code in _classes(n - 1, t, mode):
        out.extend(_children(parent, code, mode))
    return tuple(out)


def node_budget() -> int:
    raw = os.environ.get("RC_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def estimate_nodes(n: int, t: int, mode: str) -> int:
    """Rough count of colorings an enumeration visits."""
    mode = normalize_mode(mode)
    if mode == RAW:
        return t ** math.comb(n, 2)
    group = math.factorial(t) if mode == VERTEX_COLOR else 1
    total = 0
    for j in range(2, n + 1):
        parents = max(1, t ** math.comb(j - 1, 2) // (math.factorial(j - 1) * group))
        total += parents * t ** (j - 1)
    return total


def enumerate_colorings(
    n: int,
    t: int,
    mode: str = VERTEX,
    shard: tuple[int, int] = (0, 1),
    budget: int | None = None,
) -> Iterator[EdgeColoring]:
    """One representative per equivalence class under ``mode``, restricted to a shard.

    ``raw`` yields every coloring, sharded by index modulo the shard count.
    """
    mode = normalize_mode(mode)
    index, total = shard
    if not 0 <= index < total:
        raise InvariantError(f"shard index must satisfy 0 <= i < m, got {index}/{total}")
    if n < 1 or t < 1:
        raise InvariantError(f"need n >= 1 and t >= 1, got n={n}, t={t}")
    budget = node_budget() if budget is None else budget
    estimate = estimate_nodes(n, t, mode)
    if estimate > budget:
        raise LimitExceeded(f"enumeration of n={n}, t={t} ({mode}) needs ~{estimate:.3g} nodes, budget {budget:.3g}")
    if mode == RAW:
        m = math.comb(n, 2)
        for i, colors in enumerate(itertools.product(range(1, t + 1), repeat=m)):
            if i % total == index:
                yield EdgeColoring(n, t, bytes(colors))
        return
    if n == 1:
        if index == 0:
            yield EdgeColoring(1, t, b"")
        return
    for i, (parent, code) in enumerate(_classes(n - 1, t, mode)):
        if i % total == index:
            for child, _ in _children(parent, code, mode):
                yield child
