"""Covers and partitions of colored complete graphs by monochromatic pieces.

Exact routines here are brute-force oracles meant for small n; the two
constructive procedures (the two-color path partition and the greedy
H-cover) run at any size.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from ramcover.blossom import iter_bits
from ramcover.colorings import EdgeColoring
from ramcover.errors import InvariantError, LimitExceeded
from ramcover.graph import Graph, components

PATH_COVER_LIMIT = 10
CYCLE_LIMIT = 8
TILING_LIMIT = 14
COMPONENT_LIMIT = 256


@dataclass(frozen=True)
class Piece:
    kind: str  # component | path | cycle | h-copy
    color: int
    vertices: tuple[int, ...]

    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m


@dataclass(frozen=True)
class CoverCertificate:
    pieces: tuple[Piece, ...]
    h: Graph | None = field(default=None)

    @property
    def covered_count(self) -> int:
        m = 0
        for p in self.pieces:
            m |= p.mask()
        return m.bit_count()

    def to_json(self) -> dict:
        out: dict = {
            "covered": self.covered_count,
            "pieces": [{"kind": p.kind, "color": p.color, "vertices": list(p.vertices)} for p in self.pieces],
        }
        if self.h is not None:
            out["h"] = {"n": self.h.n, "edges": [list(e) for e in self.h.edges]}
        return out


@dataclass(frozen=True)
class PathPartition:
    """A color-1 path and a color-2 path (either may be empty)."""

    paths: tuple[tuple[int, tuple[int, ...]], ...]
    uncovered: frozenset[int]
    probes: int = 0

    def to_certificate(self) -> CoverCertificate:
        return CoverCertificate(tuple(Piece("path", col, seq) for col, seq in self.paths))


# -- two-color path partition ---------------------------------------------------


def two_color_path_partition(c: EdgeColoring) -> PathPartition:
    """Partition K_n into a color-1 path and a color-2 path by insertion.

    A new vertex v goes to the end of a path whose last edge would keep its
    color; otherwise with last vertices x1, x2 the color of x1x2 decides a
    bypass P1,x2,v or P2,x1,v that lengthens one path and shortens the other.
    While only one path is nonempty, a single vertex has no committed color
    and the far end of a longer path is tried before opening the other path.
    At most three edge colors are read per vertex.
    """
    if c.t != 2:
        raise InvariantError(f"two_color_path_partition needs t = 2, got t={c.t}")
    probes = 0

    def color(x: int, y: int) -> int:
        nonlocal probes
        probes += 1
        return c.color(x, y)

    paths = {1: deque(), 2: deque()}
    for v in range(1, c.n + 1):
        red, blue = paths[1], paths[2]
        if not red and not blue:
            red.append(v)
            continue
        if not red or not blue:
            own = 1 if red else 2
            path = paths[own]
            if len(path) == 1:
                col = color(path[0], v)
                single = path.pop()
                paths[col].extend((single, v))
                continue
            if color(path[-1], v) == own:
                path.append(v)
            elif color(path[0], v) == own:
                path.appendleft(v)
            else:
                paths[3 - own].append(v)
            continue
        x1, x2 = red[-1], blue[-1]
        if color(x1, v) == 1:
            red.append(v)
        elif color(x2, v) == 2:
            blue.append(v)
        elif color(x1, x2) == 1:
            # x2 v has color 1 here
            red.append(blue.pop())
            red.append(v)
        else:
            blue.append(red.pop())
            blue.append(v)
    return PathPartition(((1, tuple(paths[1])), (2, tuple(paths[2]))), frozenset(), probes)


def path_partition_violations(c: EdgeColoring, pp: PathPartition) -> list[str]:
    problems = []
    seen: set[int] = set()
    colors = [col for col, _ in pp.paths]
    if len(pp.paths) > 2 or len(set(colors)) != len(colors):
        problems.append(f"expected at most two paths of distinct colors, got colors {colors}")
    for col, seq in pp.paths:
        for a, b in zip(seq, seq[1:]):
            if c.color(a, b) != col:
                problems.append(f"edge ({a},{b}) on the color-{col} path has color {c.color(a, b)}")
        for v in seq:
            if v in seen:
                problems.append(f"vertex {v} appears twice")
            seen.add(v)
    if pp.uncovered:
        problems.append(f"uncovered vertices {sorted(pp.uncovered)}")
    missing = set(range(1, c.n + 1)) - seen
    if missing:
        problems.append(f"vertices {sorted(missing)} are not on any path")
    return problems


# -- monochromatic component covers ---------------------------------------------


def mono_components(c: EdgeColoring) -> list[tuple[int, int]]:
    """(color, vertex mask) of every monochromatic component, isolated vertices included."""
    out = []
    for color in range(1, c.t + 1):
        for comp in components(c.color_graph(color)):
            out.append((color, comp))
    return out


def _max_coverage(sets: list[tuple[int, int]], s: int, full: int) -> list[tuple[int, int]]:
    """Exact maximum coverage by at most s of the given (color, mask) sets."""
    sets = sorted(sets, key=lambda cm: (-cm[1].bit_count(), cm[0], cm[1]))
    best: list = [0, []]

    def rec(start: int, chosen: list, covered: int) -> bool:
        count = covered.bit_count()
        if count > best[0]:
            best[0], best[1] = count, list(chosen)
        if covered == full:
            return True
        left = s - len(chosen)
        if left == 0:
            return False
        gains = sorted(((m & ~covered).bit_count() for _, m in sets[start:]), reverse=True)
        if count + sum(gains[:left]) <= best[0]:
            return False
        for i in range(start, len(sets)):
            col, m = sets[i]
            if m & ~covered == 0:
                continue
            chosen.append(sets[i])
            if rec(i + 1, chosen, covered | m):
                return True
            chosen.pop()
        return False

    rec(0, [], 0)
    return best[1]


def component_cover(c: EdgeColoring, s: int, limit: int = COMPONENT_LIMIT) -> CoverCertificate:
    """Most vertices covered by the vertex sets of at most s monochromatic components."""
    if s < 1:
        raise InvariantError(f"s must be >= 1, got s={s}")
    comps = mono_components(c)
    if len(comps) > limit:
        raise LimitExceeded(f"{len(comps)} monochromatic components exceed the limit {limit}")
    unique: dict[int, int] = {}
    for color, m in comps:
        unique.setdefault(m, color)
    masks = list(unique)
    # dropping sets contained in others leaves the optimum unchanged
    maximal = [(unique[m], m) for m in masks if not any(o != m and m & o == m for o in masks)]
    full = ((1 << (c.n + 1)) - 1) & ~1
    chosen = _max_coverage(maximal, s, full)
    pieces = sorted((Piece("component", col, tuple(iter_bits(m))) for col, m in chosen), key=lambda p: (p.color, p.vertices))
    return CoverCertificate(tuple(pieces))


def ryser_cover_check(c: EdgeColoring) -> CoverCertificate | None:
    """Cover of all vertices by at most t-1 monochromatic components, or None."""
    if c.t < 2:
        raise InvariantError(f"the component-cover claim needs t >= 2, got t={c.t}")
    cert = component_cover(c, c.t - 1)
    return cert if cert.covered_count == c.n else None


# -- Hamiltonian path / cycle tables ---------------------------------------------


def _path_ends(adj: tuple[int, ...], n: int) -> list[int]:
    """ends[S]: bitmask (vertex v at bit v) of endpoints of Hamiltonian paths of S.

    Subsets S are over vertices 1..n, indexed by mask >> 1.
    """
    size = 1 << n
    ends = [0] * size
    for sub in range(1, size):
        low = sub & -sub
        if sub == low:
            ends[sub] = low << 1
            continue
        acc = 0
        for i in iter_bits(sub):
            v = i + 1
            prev = ends[sub & ~(1 << i)]
            if prev & adj[v]:
                acc |= 1 << v
        ends[sub] = acc
    return ends


def _cycle_table(adj: tuple[int, ...], n: int) -> list[bool]:
    """cyc[S]: S (mask >> 1) carries a Hamiltonian cycle with |S| >= 3, or |S| <= 2 degenerate."""
    size = 1 << n
    # rooted[S]: endpoints of paths from min(S) covering S
    rooted = [0] * size
    cyc = [False] * size
    cyc[0] = True
    for sub in range(1, size):
        low = sub & -sub
        root = low.bit_length()  # vertex label
        if sub == low:
            rooted[sub] = 1 << root
            cyc[sub] = True
            continue
        acc = 0
        for i in iter_bits(sub & ~low):
            v = i + 1
            if rooted[sub & ~(1 << i)] & adj[v]:
                acc |= 1 << v
        rooted[sub] = acc
        k = sub.bit_count()
        if k == 2:
            cyc[sub] = bool(acc)
        else:
            cyc[sub] = bool(acc & adj[root])
    return cyc


def _trace_path(adj: tuple[int, ...], ends: list[int], sub: int) -> list[int]:
    """Recover a Hamiltonian path of subset ``sub`` from an ends table."""
    seq: list[int] = []
    want = ends[sub]
    while sub:
        v = (want & -want).bit_length() - 1
        seq.append(v)
        sub &= ~(1 << (v - 1))
        want = ends[sub] & adj[v] if sub else 0
    return seq[::-1]


def _trace_cycle(adj: tuple[int, ...], sub: int) -> list[int]:
    verts = [i + 1 for i in iter_bits(sub)]
    if len(verts) <= 2:
        return verts
    root = verts[0]
    rest = verts[1:]
    for perm in itertools.permutations(rest):
        seq = [root, *perm]
        if all(adj[a] >> b & 1 for a, b in zip(seq, seq[1:] + [root])):
            return seq
    raise AssertionError("cycle table and trace disagree")


def _check_limit(c: EdgeColoring, limit: int, what: str) -> None:
    if c.n > limit:
        raise LimitExceeded(f"{what} limited to n <= {limit}, got n={c.n}")


def brute_path_cover(c: EdgeColoring, s: int, limit: int = PATH_COVER_LIMIT) -> CoverCertificate:
    """Most vertices covered by s vertex-disjoint monochromatic paths (single vertices count)."""
    if s < 1:
        raise InvariantError(f"s must be >= 1, got s={s}")
    _check_limit(c, limit, "brute_path_cover")
    n = c.n
    size = 1 << n
    tables = {col: _path_ends(c.color_adj[col], n) for col in range(1, c.t + 1)}
    path_color = [0] * size
    for sub in range(1, size):
        for col in range(1, c.t + 1):
            if tables[col][sub]:
                path_color[sub] = col
                break
    # reach[S]: S splits into at most k path sets; choice records the piece holding min(S)
    reach = bytearray(size)
    reach[0] = 1
    choice = [0] * size
    full = size - 1
    for _ in range(min(s, n)):
        nxt = bytearray(reach)
        for sub in range(1, size):
            if nxt[sub]:
                continue
            low = sub & -sub
            rest = sub & ~low
            a = rest
            while True:
                piece = a | low
                if path_color[piece] and reach[sub & ~piece]:
                    nxt[sub] = 1
                    choice[sub] = piece
                    break
                if a == 0:
                    break
                a = (a - 1) & rest
        reach = nxt
        if reach[full]:
            break
    best = max(range(size), key=lambda sub: (reach[sub] and sub.bit_count(), -sub))
    pieces = []
    sub = best
    while sub:
        piece = choice[sub]
        col = path_color[piece]
        seq = _trace_path(c.color_adj[col], tables[col], piece)
        pieces.append(Piece("path", col, tuple(seq)))
        sub &= ~piece
    return CoverCertificate(tuple(pieces))


def brute_cycle_partition2(c: EdgeColoring, limit: int = CYCLE_LIMIT) -> CoverCertificate | None:
    """Color-1 cycle and color-2 cycle partitioning V (empty, one vertex and one edge count)."""
    if c.t != 2:
        raise InvariantError(f"brute_cycle_partition2 needs t = 2, got t={c.t}")
    _check_limit(c, limit, "brute_cycle_partition2")
    n = c.n
    full = (1 << n) - 1
    cyc = {col: _cycle_table(c.color_adj[col], n) for col in (1, 2)}
    order = sorted(range(full + 1), key=lambda sub: (-max(sub.bit_count(), n - sub.bit_count()), -sub.bit_count(), sub))
    for sub in order:
        if cyc[1][sub] and cyc[2][full & ~sub]:
            return CoverCertificate((
                Piece("cycle", 1, tuple(_trace_cycle(c.color_adj[1], sub))),
                Piece("cycle", 2, tuple(_trace_cycle(c.color_adj[2], full & ~sub))),
            ))
    return None


def brute_cycle_partition(c: EdgeColoring, limit: int = CYCLE_LIMIT) -> CoverCertificate:
    """Partition of V into the fewest monochromatic cycles, colors may repeat."""
    _check_limit(c, limit, "brute_cycle_partition")
    n = c.n
    size = 1 << n
    tables = {col: _cycle_table(c.color_adj[col], n) for col in range(1, c.t + 1)}
    cyc_color = [0] * size
    for sub in range(1, size):
        for col in range(1, c.t + 1):
            if tables[col][sub]:
                cyc_color[sub] = col
                break
    fewest = [0] * size
    choice = [0] * size
    for sub in range(1, size):
        low = sub & -sub
        rest = sub & ~low
        best = n + 1
        a = rest
        while True:
            piece = a | low
            if cyc_color[piece] and fewest[sub & ~piece] + 1 < best:
                best = fewest[sub & ~piece] + 1
                choice[sub] = piece
            if a == 0:
                break
            a = (a - 1) & rest
        fewest[sub] = best
    pieces = []
    sub = size - 1
    while sub:
        piece = choice[sub]
        col = cyc_color[piece]
        pieces.append(Piece("cycle", col, tuple(_trace_cycle(c.color_adj[col], piece))))
        sub &= ~piece
    return CoverCertificate(tuple(pieces))


# -- copies of a fixed graph H ---------------------------------------------------

NAMED_GRAPHS = {
    "triangle": (3, [(1, 2), (1, 3), (2, 3)]),
    "k3": (3, [(1, 2), (1, 3), (2, 3)]),
    "c5": (5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
    "edge": (2, [(1, 2)]),
}

H_LIMIT = 5


def named_graph(name: str) -> Graph:
    try:
        n, edges = NAMED_GRAPHS[name.lower()]
    except KeyError:
        raise InvariantError(f"unknown graph name {name!r}; known: {sorted(NAMED_GRAPHS)}") from None
    return Graph.from_edges(n, edges)


def _check_h(h: Graph) -> list[int]:
    if h.n < 1 or h.n > H_LIMIT:
        raise InvariantError(f"H must have 1..{H_LIMIT} vertices, got {h.n}")
    if len(components(h)) != 1:
        raise InvariantError("H must be connected")
    order, seen = [1], 1 << 1
    i = 0
    while i < len(order):
        for w in iter_bits(h.adj[order[i]] & ~seen):
            order.append(w)
            seen |= 1 << w
        i += 1
    return order


def iter_mono_copies(c: EdgeColoring, h: Graph, color: int, avail: int | None = None) -> Iterator[tuple[int, ...]]:
    """Injective maps of H into the color class, as images of H's vertices 1..|H|.

    Vertices are placed in BFS order of H; each candidate must be adjacent in
    ``color`` to the images of its placed H-neighbors and have enough
    color-degree inside ``avail``.
    """
    order = _check_h(h)
    adj = c.color_adj[color]
    if avail is None:
        avail = ((1 << (c.n + 1)) - 1) & ~1
    back = [[u for u in order[:i] if h.adj[order[i]] >> u & 1] for i in range(len(order))]
    degree = [h.adj[u].bit_count() for u in order]
    image = [0] * (h.n + 1)

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(image[1:])
            return
        cand = avail & ~used
        for u in back[i]:
            cand &= adj[image[u]]
        for w in iter_bits(cand):
            if (adj[w] & avail).bit_count() < degree[i]:
                continue
            image[order[i]] = w
            yield from rec(i + 1, used | 1 << w)

    yield from rec(0, 0)


def greedy_h_packing(c: EdgeColoring, h: Graph) -> tuple[list[Piece], int]:
    """Repeatedly take a monochromatic copy of H from what is left.

    Stops when the residue has no monochromatic copy in any color; returns
    the copies and the residue mask.
    """
    residue = ((1 << (c.n + 1)) - 1) & ~1
    copies: list[Piece] = []
    while True:
        found = None
        for color in range(1, c.t + 1):
            found = next(iter_mono_copies(c, h, color, residue), None)
            if found is not None:
                copies.append(Piece("h-copy", color, found))
                for v in found:
                    residue &= ~(1 << v)
                break
        if found is None:
            return copies, residue


def greedy_h_cover(c: EdgeColoring, h: Graph, ramsey_bound: int, s: int) -> CoverCertificate:
    """Greedy H-packing restricted to the s colors that cover the most vertices.

    If ``ramsey_bound`` >= R_t(H) the result covers at least s(n - ramsey_bound)/t vertices.
    """
    if not 1 <= s <= c.t:
        raise InvariantError(f"s must satisfy 1 <= s <= t={c.t}, got s={s}")
    if ramsey_bound < 1:
        raise InvariantError(f"ramsey_bound must be positive, got {ramsey_bound}")
    copies, _ = greedy_h_packing(c, h)
    per_color = {col: sum(len(p.vertices) for p in copies if p.color == col) for col in range(1, c.t + 1)}
    keep = sorted(per_color, key=lambda col: (-per_color[col], col))[:s]
    return CoverCertificate(tuple(p for p in copies if p.color in keep), h)


def brute_h_tiling(c: EdgeColoring, h: Graph, s: int, limit: int = TILING_LIMIT) -> CoverCertificate:
    """Most vertices covered by disjoint monochromatic H-copies using at most s colors."""
    if s < 1:
        raise InvariantError(f"s must be >= 1, got s={s}")
    _check_limit(c, limit, "brute_h_tiling")
    copies: dict[tuple[int, int], tuple[int, ...]] = {}
    for color in range(1, c.t + 1):
        for img in iter_mono_copies(c, h, color):
            m = 0
            for v in img:
                m |= 1 << v
            copies.setdefault((color, m), img)
    best_count, best_pieces = -1, ()
    for palette in itertools.combinations(range(1, c.t + 1), min(s, c.t)):
        by_low: dict[int, list[tuple[int, int]]] = {}
        for color, m in copies:
            if color in palette:
                by_low.setdefault(m & -m, []).append((color, m))

        @lru_cache(maxsize=None)
        def pack(avail: int) -> tuple[int, tuple[tuple[int, int], ...]]:
            if not avail:
                return 0, ()
            low = avail & -avail
            best = pack(avail & ~low)
            for color, m in by_low.get(low, ()):
                if m & avail == m:
                    sub = pack(avail & ~m)
                    if sub[0] + m.bit_count() > best[0]:
                        best = (sub[0] + m.bit_count(), ((color, m),) + sub[1])
            return best

        count, chosen = pack(((1 << (c.n + 1)) - 1) & ~1)
        if count > best_count:
            best_count = count
            best_pieces = tuple(Piece("h-copy", color, copies[(color, m)]) for color, m in chosen)
    return CoverCertificate(best_pieces, h)


def has_mono_copy(c: EdgeColoring, h: Graph, avail: int | None = None) -> bool:
    return any(next(iter_mono_copies(c, h, col, avail), None) is not None for col in range(1, c.t + 1))


@lru_cache(maxsize=None)
def verified_triangle_ramsey_number() -> int:
    """R_2(K_3) = 6, checked by exhausting 2-colorings of K_5 and K_6."""
    tri = named_graph("triangle")

    def all_have(n: int) -> bool:
        for colors in itertools.product((1, 2), repeat=n * (n - 1) // 2):
            if not has_mono_copy(EdgeColoring(n, 2, bytes(colors)), tri):
                return False
        return True

    if all_have(5) or not all_have(6):
        raise AssertionError("R_2(K_3) != 6")
    return 6
