"""Edmonds' blossom algorithm for maximum cardinality matching.

Vertices are 1..n; index 0 is unused. The matcher keeps a mutable ``mate``
array and an ``alive`` mask so callers can delete vertices and re-augment
incrementally, which is how lexicographically least maximum matchings and
Gallai-Edmonds sets are computed without re-solving from scratch.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

UNMATCHED = -1


def iter_bits(mask: int):
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Matcher:
    """Incremental maximum matching on a graph given by adjacency bitsets."""

    __slots__ = ("n", "nbrs", "mate", "alive")

    def __init__(self, n: int, adj: Sequence[int]) -> None:
        self.n = n
        self.nbrs = [list(iter_bits(adj[v])) for v in range(n + 1)]
        self.mate = [UNMATCHED] * (n + 1)
        self.alive = [v > 0 for v in range(n + 1)]

    def solve(self) -> int:
        """Grow ``mate`` into a maximum matching; return its size."""
        mate, alive, nbrs = self.mate, self.alive, self.nbrs
        # greedy start, smallest free neighbor first
        for v in range(1, self.n + 1):
            if alive[v] and mate[v] == UNMATCHED:
                for u in nbrs[v]:
                    if alive[u] and mate[u] == UNMATCHED:
                        mate[v], mate[u] = u, v
                        break
        # a root that fails once never augments later
        for v in range(1, self.n + 1):
            if alive[v] and mate[v] == UNMATCHED:
                self.augment_from(v)
        return self.size()

    def size(self) -> int:
        mate, alive = self.mate, self.alive
        return sum(1 for v in range(1, self.n + 1) if alive[v] and mate[v] > v)

    def augment_from(self, root: int) -> bool:
        """Search for an augmenting path from the exposed vertex ``root``.

        On success the matching is flipped along the path and True is
        returned; on failure ``mate`` is left untouched.
        """
        n, mate, nbrs, alive = self.n, self.mate, self.nbrs, self.alive
        parent = [UNMATCHED] * (n + 1)
        base = list(range(n + 1))
        used = [False] * (n + 1)
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * (n + 1)
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == UNMATCHED:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for u in nbrs[v]:
                if not alive[u] or base[v] == base[u] or mate[v] == u:
                    continue
                if u == root or (mate[u] != UNMATCHED and parent[mate[u]] != UNMATCHED):
                    cur = lca(v, u)
                    blossom = [False] * (n + 1)
                    mark_path(v, cur, u, blossom)
                    mark_path(u, cur, v, blossom)
                    for i in range(1, n + 1):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[u] == UNMATCHED:
                    parent[u] = v
                    if mate[u] == UNMATCHED:
                        while u != UNMATCHED:
                            pv = parent[u]
                            nxt = mate[pv]
                            mate[u] = pv
                            mate[pv] = u
                            u = nxt
                        return True
                    used[mate[u]] = True
                    queue.append(mate[u])
        return False

    def pairs(self) -> list[tuple[int, int]]:
        return [(v, self.mate[v]) for v in range(1, self.n + 1) if self.mate[v] > v]

    def _in_some_maximum(self, u: int, v: int) -> bool:
        """Decide whether edge uv lies in some maximum matching of the live graph.

        Requires ``mate`` to be maximum. On True, ``mate`` is updated to a
        maximum matching containing uv; on False it is restored.
        """
        mate, alive = self.mate, self.alive
        if mate[u] == v:
            return True
        mu, mv = mate[u], mate[v]
        if mu == UNMATCHED or mv == UNMATCHED:
            if mu != UNMATCHED:
                mate[mu] = UNMATCHED
            if mv != UNMATCHED:
                mate[mv] = UNMATCHED
            mate[u], mate[v] = v, u
            return True
        alive[u] = alive[v] = False
        mate[u] = mate[v] = mate[mu] = mate[mv] = UNMATCHED
        # any augmenting path in G-u-v must end at mu or mv
        if self.augment_from(mu) or (mate[mv] == UNMATCHED and self.augment_from(mv)):
            alive[u] = alive[v] = True
            mate[u], mate[v] = v, u
            return True
        alive[u] = alive[v] = True
        mate[u], mate[mu] = mu, u
        mate[v], mate[mv] = mv, v
        return False

    def lexmin_pairs(self) -> list[tuple[int, int]]:
        """Lexicographically least maximum matching (edges as sorted pairs).

        Edges are scanned in (min endpoint, max endpoint) order; an edge is
        taken iff it extends to a maximum matching of what remains. Consumes
        the matcher.
        """
        self.solve()
        alive, nbrs = self.alive, self.nbrs
        taken: list[tuple[int, int]] = []
        for u in range(1, self.n + 1):
            if not alive[u]:
                continue
            for v in nbrs[u]:
                if v > u and alive[v] and self._in_some_maximum(u, v):
                    taken.append((u, v))
                    alive[u] = alive[v] = False
                    break
            else:
                alive[u] = False
        return taken


def maximum_matching_size(n: int, adj: Sequence[int]) -> int:
    return Matcher(n, adj).solve()


def lexmin_maximum_matching(n: int, adj: Sequence[int]) -> list[tuple[int, int]]:
    return Matcher(n, adj).lexmin_pairs()
