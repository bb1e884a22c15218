"""Simple graphs on vertices 1..n, maximum matchings and Tutte-Berge witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from ramcover.blossom import Matcher, iter_bits, lexmin_maximum_matching, maximum_matching_size
from ramcover.errors import InvariantError, LimitExceeded

Edge = tuple[int, int]

BRUTE_FORCE_LIMIT = 14


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph stored as adjacency bitsets.

    ``adj[v]`` has bit ``w`` set iff vw is an edge; ``adj[0]`` is always 0.
    """

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        if n < 0:
            raise InvariantError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * (n + 1)
        for e in edges:
            u, v = e
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvariantError(f"edge ({u},{v}) has an endpoint outside 1..{n}")
            if u == v:
                raise InvariantError(f"loop at vertex {u}")
            if adj[u] >> v & 1:
                raise InvariantError(f"duplicate edge ({min(u, v)},{max(u, v)})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = ((1 << (n + 1)) - 1) & ~1
        return cls(n, (0,) + tuple(full & ~(1 << v) for v in range(1, n + 1)))

    @property
    def vertex_mask(self) -> int:
        return ((1 << (self.n + 1)) - 1) & ~1

    @property
    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(1, self.n + 1) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and bool(self.adj[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            n = data["n"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvariantError(f"graph JSON needs keys 'n' and 'edges': {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvariantError("'n' must be an integer")
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise InvariantError(f"malformed edge entry {e!r}")
            if not e[0] < e[1]:
                raise InvariantError(f"edge {e} must be written with u < v")
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return len(self.edges)

    def covered(self) -> int:
        mask = 0
        for u, v in self.edges:
            mask |= 1 << u | 1 << v
        return mask

    def check(self, g: Graph) -> list[str]:
        """Return invariant violations of this matching against host ``g``."""
        problems = []
        seen = 0
        for u, v in self.edges:
            if not g.has_edge(u, v):
                problems.append(f"edge ({u},{v}) is not in the host graph")
            if seen >> u & 1 or seen >> v & 1:
                problems.append(f"edge ({u},{v}) shares a vertex with an earlier edge")
            seen |= 1 << u | 1 << v
        return problems


@dataclass(frozen=True)
class DeficiencyWitness:
    x_set: frozenset[int]
    odd_components: int
    deficiency: int


def matching_number(g: Graph) -> int:
    """Size of a maximum matching, without building the lexicographic certificate."""
    return maximum_matching_size(g.n, g.adj)


def max_matching(g: Graph) -> Matching:
    """Lexicographically least maximum matching of ``g``."""
    return Matching(tuple(lexmin_maximum_matching(g.n, g.adj)))


def brute_force_max_matching(g: Graph, limit: int = BRUTE_FORCE_LIMIT) -> Matching:
    """Maximum matching by exhaustive branching; independent of the blossom code.

    The lowest uncovered vertex is either left out or matched to each of
    its remaining neighbors in turn. Results are memoised by vertex mask.
    """
    if g.n > limit:
        raise LimitExceeded(f"brute-force matching limited to n <= {limit}, got n={g.n}")
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        cap = mask.bit_count() // 2
        top = 0
        for u in iter_bits(adj[v] & rest):
            top = max(top, 1 + best(rest & ~(1 << u)))
            if top == cap:
                return top
        return max(top, best(rest))

    mask = g.vertex_mask
    edges: list[Edge] = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        want = best(mask)
        for u in iter_bits(adj[v] & rest):
            if 1 + best(rest & ~(1 << u)) == want:
                edges.append((v, u))
                mask = rest & ~(1 << u)
                break
        else:
            mask = rest
    return Matching(tuple(edges))


def deficiency(g: Graph) -> int:
    return g.n - 2 * matching_number(g)


def components(g: Graph, within: int | None = None) -> list[int]:
    """Vertex masks of the connected components of ``g`` restricted to ``within``."""
    left = g.vertex_mask if within is None else within
    adj = g.adj
    out = []
    while left:
        comp = frontier = left & -left
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            frontier = grow & left & ~comp
            comp |= frontier
        out.append(comp)
        left &= ~comp
    return out


def odd_components(g: Graph, x: Iterable[int] = ()) -> int:
    """Number of odd-order components of ``g`` with the vertices ``x`` deleted."""
    removed = 0
    for v in x:
        if not 1 <= v <= g.n:
            raise InvariantError(f"vertex {v} is not in 1..{g.n}")
        removed |= 1 << v
    return sum(1 for comp in components(g, g.vertex_mask & ~removed) if comp.bit_count() & 1)


def berge_witness(g: Graph) -> DeficiencyWitness:
    """Tutte-Berge witness via the Gallai-Edmonds decomposition.

    D is the set of vertices missed by some maximum matching; the witness
    is X = N(D) minus D, which attains max over X of c_o(G-X) - |X|.
    """
    base = Matcher(g.n, g.adj)
    nu = base.solve()
    missable = 0
    for v in range(1, g.n + 1):
        mv = base.mate[v]
        if mv == -1:
            missable |= 1 << v
            continue
        probe = Matcher.__new__(Matcher)
        probe.n, probe.nbrs = base.n, base.nbrs
        probe.mate = base.mate.copy()
        probe.alive = base.alive.copy()
        probe.alive[v] = False
        probe.mate[v] = probe.mate[mv] = -1
        if probe.augment_from(mv):
            missable |= 1 << v
    nbhd = 0
    for v in iter_bits(missable):
        nbhd |= g.adj[v]
    x_mask = nbhd & ~missable
    x_set = frozenset(iter_bits(x_mask))
    odd = odd_components(g, x_set)
    witness = DeficiencyWitness(x_set, odd, odd - len(x_set))
    if __debug__ and witness.deficiency != g.n - 2 * nu:
        raise AssertionError(f"Gallai-Edmonds witness failed: {witness} vs n-2nu={g.n - 2 * nu}")
    return witness


def read_graph(path: str | Path) -> Graph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvariantError(f"{path}: not valid JSON ({exc})") from None
    return Graph.from_json(data)


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_json(), sort_keys=True) + "\n")
