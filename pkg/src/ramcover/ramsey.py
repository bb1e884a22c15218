"""s-colored matchings in t-colored complete graphs: thresholds, solvers, sharpness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ramcover.blossom import iter_bits
from ramcover.colorings import EdgeColoring, extremal_main_coloring, extremal_main_parts, pair_index
from ramcover.errors import InvariantError
from ramcover.graph import Graph, Matching, components, matching_number, max_matching


@dataclass(frozen=True)
class MatchingCertificate:
    """A matching together with the color set it was drawn from.

    ``missing_colors`` are the colors of 1..t that no matching edge uses.
    ``component`` is set only for connected monochromatic matchings.
    """

    matching: Matching
    colors_used: tuple[int, ...]
    missing_colors: tuple[int, ...]
    component: tuple[int, ...] | None = field(default=None)

    @property
    def size(self) -> int:
        return len(self.matching)

    def to_json(self) -> dict:
        out = {
            "size": self.size,
            "colors_used": list(self.colors_used),
            "edges": [list(e) for e in self.matching.edges],
            "missing_colors": list(self.missing_colors),
        }
        if self.component is not None:
            out["component"] = list(self.component)
        return out


@dataclass(frozen=True)
class ThresholdResult:
    n_guarantee: int
    k: int
    t: int
    p: int


def _certificate(c: EdgeColoring, matching: Matching, colors: Iterable[int], component=None) -> MatchingCertificate:
    present = {c.color(u, v) for u, v in matching.edges}
    missing = tuple(i for i in range(1, c.t + 1) if i not in present)
    return MatchingCertificate(matching, tuple(sorted(colors)), missing, component)


def main_threshold(k: int, t: int) -> ThresholdResult:
    """Least n with a (t-1)-colored matching of size k in every t-coloring of K_n."""
    if t < 2:
        raise InvariantError(f"main threshold needs t >= 2, got t={t}")
    if k < 1:
        raise InvariantError(f"k must be >= 1, got k={k}")
    p = (k - 1) // (2 ** (t - 1) - 1)
    return ThresholdResult(2 * k + p, k, t, p)


def cockayne_lorimer_threshold(p: int, t: int) -> int:
    """Least n forcing a monochromatic matching of size p+1 in every t-coloring of K_n."""
    if p < 0 or t < 1:
        raise InvariantError(f"need p >= 0 and t >= 1, got p={p}, t={t}")
    return (t + 1) * p + 2


def color_restricted_subgraph(c: EdgeColoring, s: Iterable[int]) -> Graph:
    s = set(s)
    bad = sorted(x for x in s if not 1 <= x <= c.t)
    if bad:
        raise InvariantError(f"colors {bad} are outside 1..{c.t}")
    return c.subgraph(s)


def max_s_colored_matching(c: EdgeColoring, s: int) -> MatchingCertificate:
    """Largest matching using at most s colors, exact over all s-subsets of colors.

    The certificate's color set is the lexicographically least maximizer.
    """
    if not 1 <= s <= c.t:
        raise InvariantError(f"s must satisfy 1 <= s <= t={c.t}, got s={s}")
    cap = c.n // 2
    best_size, best_set = -1, ()
    for subset in itertools.combinations(range(1, c.t + 1), s):
        size = matching_number(c.subgraph(subset))
        if size > best_size:
            best_size, best_set = size, subset
            if size == cap:
                break
    return _certificate(c, max_matching(c.subgraph(best_set)), best_set)


def max_monochromatic_matching(c: EdgeColoring) -> MatchingCertificate:
    return max_s_colored_matching(c, 1)


def find_missing_color_matching(c: EdgeColoring, k: int) -> MatchingCertificate | None:
    """Size-k matching avoiding some color, taking the smallest such color.

    Returns None when every color-complement subgraph has matching number
    below k, which cannot happen once n reaches the main threshold.
    """
    if k < 1:
        raise InvariantError(f"k must be >= 1, got k={k}")
    for i in range(1, c.t + 1):
        rest = [j for j in range(1, c.t + 1) if j != i]
        g = c.subgraph(rest)
        if matching_number(g) >= k:
            full = max_matching(g)
            return _certificate(c, Matching(full.edges[:k]), rest)
    return None


def perfect_matching_missing_color(c: EdgeColoring) -> MatchingCertificate | None:
    """Perfect matching that avoids at least one color, or None if there is none."""
    if c.n % 2:
        raise InvariantError(f"a perfect matching needs even n, got n={c.n}")
    if c.n == 0:
        return None
    return find_missing_color_matching(c, c.n // 2)


def max_connected_mono_matching(c: EdgeColoring) -> MatchingCertificate:
    """Largest monochromatic matching lying inside one component of its color class."""
    best: tuple[int, int, int] | None = None
    for color in range(1, c.t + 1):
        g = c.color_graph(color)
        for comp in components(g):
            if comp.bit_count() < 2:
                continue
            sub = Graph(c.n, tuple(a & comp if comp >> v & 1 else 0 for v, a in enumerate(g.adj)))
            size = matching_number(sub)
            if best is None or size > best[0]:
                best = (size, color, comp)
    if best is None:
        return _certificate(c, Matching(()), (), component=())
    _, color, comp = best
    sub = Graph(c.n, tuple(a & comp if comp >> v & 1 else 0 for v, a in enumerate(c.color_adj[color])))
    return _certificate(c, max_matching(sub), (color,), component=tuple(iter_bits(comp)))


def sharpness_check_main(t: int, k: int) -> dict:
    """Build the extremal coloring for (t, k) and measure its best (t-1)-colored matching.

    Sharpness holds when the measured maximum is exactly k - 1.
    """
    parts = extremal_main_parts(t, k)
    c = extremal_main_coloring(t, k)
    cert = max_s_colored_matching(c, t - 1)
    return {
        "t": t,
        "k": k,
        "n": c.n,
        "parts": parts,
        "max_matching": cert.size,
        "expected": k - 1,
        "sharp": cert.size == k - 1,
        "colors_used": list(cert.colors_used),
    }


def perfect_matchings(n: int) -> list[tuple[tuple[int, int], ...]]:
    """All perfect matchings of K_n (n even), edges as sorted pairs."""
    def rec(left: tuple[int, ...]):
        if not left:
            yield ()
            return
        v = left[0]
        for i in range(1, len(left)):
            rest = left[1:i] + left[i + 1:]
            for tail in rec(rest):
                yield ((v, left[i]),) + tail

    return list(rec(tuple(range(1, n + 1))))


def sweep_missing_color_perfect_matchings(n: int, t: int, block: int = 10) -> dict:
    """Check every t-coloring of K_n for a perfect matching that misses a color.

    Colorings are numbered in lexicographic order of their color lists.
    Each perfect matching's color set is a bitmask; a coloring passes when
    some matching's mask is not full. Vectorized over the last ``block``
    pair positions.
    """
    if n % 2 or n < 2:
        raise InvariantError(f"need even n >= 2, got n={n}")
    m = n * (n - 1) // 2
    low_len = min(block, m)
    high_len = m - low_len
    low = np.array(list(itertools.product(range(t), repeat=low_len)), dtype=np.int64).reshape(-1, low_len)
    low_bits = (1 << low).astype(np.int64)
    full = (1 << t) - 1
    matchings = [[pair_index(n, x, y) for x, y in pm] for pm in perfect_matchings(n)]
    failures = 0
    first = None
    for hi_index, high in enumerate(itertools.product(range(t), repeat=high_len)):
        ok = np.zeros(len(low), dtype=bool)
        for pm in matchings:
            const = 0
            mask = np.zeros(len(low), dtype=np.int64)
            for pos in pm:
                if pos < high_len:
                    const |= 1 << high[pos]
                else:
                    mask |= low_bits[:, pos - high_len]
            ok |= (mask | const) != full
        bad = np.flatnonzero(~ok)
        if bad.size:
            failures += int(bad.size)
            if first is None:
                colors = [h + 1 for h in high] + [int(x) + 1 for x in low[bad[0]]]
                first = EdgeColoring(n, t, bytes(colors))
    return {"checked": t**m, "failures": failures, "first_failure": first}
