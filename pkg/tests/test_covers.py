from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from ramcover.canon import VERTEX, VERTEX_COLOR, enumerate_colorings
from ramcover.certify import check_cover_certificate
from ramcover.colorings import EdgeColoring, nb_coloring, pairs, partition_coloring, random_coloring
from ramcover.covers import (
    brute_cycle_partition,
    brute_cycle_partition2,
    brute_h_tiling,
    brute_path_cover,
    component_cover,
    greedy_h_cover,
    greedy_h_packing,
    has_mono_copy,
    iter_mono_copies,
    mono_components,
    named_graph,
    path_partition_violations,
    ryser_cover_check,
    two_color_path_partition,
    verified_triangle_ramsey_number,
)
from ramcover.errors import InvariantError, LimitExceeded
from ramcover.graph import Graph
from support import all_colorings, colorings

TRIANGLE = named_graph("triangle")


def as_paths(pp):
    return {col: seq for col, seq in pp.paths}


def same_path(a, b):
    return tuple(a) == tuple(b) or tuple(a) == tuple(reversed(b))


# -- two-color path partition ----------------------------------------------------


def test_path_partition_monochromatic():
    pp = two_color_path_partition(EdgeColoring.monochromatic(5, 2, 1))
    assert as_paths(pp) == {1: (1, 2, 3, 4, 5), 2: ()}
    assert path_partition_violations(EdgeColoring.monochromatic(5, 2, 1), pp) == []


def test_path_partition_triangle_example():
    c = EdgeColoring(3, 2, bytes([1, 1, 2]))  # (1,2),(1,3) color 1; (2,3) color 2
    paths = as_paths(two_color_path_partition(c))
    assert same_path(paths[1], (2, 1, 3)) and paths[2] == ()


def test_path_partition_probe_bound(rng):
    for _ in range(300):
        n = int(rng.integers(1, 101))
        c = random_coloring(n, 2, rng)
        pp = two_color_path_partition(c)
        assert path_partition_violations(c, pp) == []
        assert pp.probes <= 3 * n
        assert check_cover_certificate(c, pp.to_certificate().to_json()) == []


def test_path_partition_all_k6():
    for c in all_colorings(6, 2):
        pp = two_color_path_partition(c)
        assert path_partition_violations(c, pp) == [] and pp.probes <= 18


def test_path_partition_checker_detects_errors():
    c = EdgeColoring.monochromatic(4, 2, 1)
    pp = two_color_path_partition(c)
    bad = type(pp)(((1, (1, 2)), (2, (3, 4))), frozenset())
    assert path_partition_violations(c, bad)
    short = type(pp)(((1, (1, 2, 3)), (2, ())), frozenset())
    assert any("not on any path" in m for m in path_partition_violations(c, short))


def test_path_partition_needs_two_colors():
    with pytest.raises(InvariantError):
        two_color_path_partition(EdgeColoring.monochromatic(4, 3))


# -- components ----------------------------------------------------------------


def test_mono_components_include_isolated_vertices():
    c = partition_coloring([1, 3])
    comps = mono_components(c)
    assert (1, 0b11110) in comps  # color-1 star spans everything
    assert (2, 0b00010) in comps  # vertex 1 alone in color 2


def test_component_cover_examples(rng):
    assert component_cover(partition_coloring([1, 3]), 1).covered_count == 4
    assert component_cover(EdgeColoring.monochromatic(7, 3, 2), 1).covered_count == 7
    for _ in range(50):
        c = random_coloring(int(rng.integers(2, 12)), 2, rng)
        assert component_cover(c, 1).covered_count == c.n


def brute_component_cover(c: EdgeColoring, s: int) -> int:
    comps = [m for _, m in mono_components(c)]
    best = 0
    for r in range(1, min(s, len(comps)) + 1):
        for combo in itertools.combinations(comps, r):
            union = 0
            for m in combo:
                union |= m
            best = max(best, union.bit_count())
    return best


def test_component_cover_against_enumeration(rng):
    for _ in range(80):
        c = random_coloring(int(rng.integers(2, 9)), int(rng.integers(2, 5)), rng)
        for s in range(1, 4):
            cert = component_cover(c, s)
            assert cert.covered_count == brute_component_cover(c, s)
            assert check_cover_certificate(c, cert.to_json()) == []


@given(colorings(min_n=2, max_n=9, min_t=2))
@settings(max_examples=100, deadline=None)
def test_component_cover_monotone(c):
    counts = [component_cover(c, s).covered_count for s in range(1, c.t + 2)]
    assert counts == sorted(counts)
    assert counts[-1] == c.n  # one color's components always cover V


def test_ryser_examples(rng):
    for _ in range(30):
        c = random_coloring(int(rng.integers(2, 15)), 2, rng)
        cert = ryser_cover_check(c)
        assert cert is not None and len(cert.pieces) == 1
    mono = EdgeColoring.monochromatic(6, 4, 3)
    assert len(ryser_cover_check(mono).pieces) == 1


def test_ryser_three_colors_k6_classes():
    for c in enumerate_colorings(6, 3, VERTEX_COLOR):
        cert = ryser_cover_check(c)
        assert cert is not None and len(cert.pieces) <= 2


# -- brute-force path and cycle covers -----------------------------------------


def test_brute_path_cover_examples(rng):
    c = random_coloring(7, 3, rng)
    assert brute_path_cover(c, 7).covered_count == 7
    assert brute_path_cover(EdgeColoring.monochromatic(5, 2, 1), 1).covered_count == 5
    for _ in range(40):
        c = random_coloring(int(rng.integers(1, 10)), 2, rng)
        cert = brute_path_cover(c, 2)
        assert cert.covered_count == c.n
        assert check_cover_certificate(c, cert.to_json()) == []


def brute_paths(c: EdgeColoring, s: int) -> int:
    """Exhaustive: best coverage by at most s disjoint monochromatic paths."""
    n = c.n
    paths = []
    for r in range(1, n + 1):
        for seq in itertools.permutations(range(1, n + 1), r):
            if seq[0] > seq[-1]:
                continue
            cols = {c.color(a, b) for a, b in zip(seq, seq[1:])}
            if len(cols) <= 1:
                paths.append(frozenset(seq))
    paths = list(set(paths))
    best = 0

    def rec(start, used, k):
        nonlocal best
        best = max(best, len(used))
        if k == 0:
            return
        for i in range(start, len(paths)):
            if not paths[i] & used:
                rec(i + 1, used | paths[i], k - 1)

    rec(0, frozenset(), s)
    return best


def test_brute_path_cover_against_enumeration(rng):
    for _ in range(25):
        c = random_coloring(int(rng.integers(2, 7)), 3, rng)
        for s in (1, 2):
            assert brute_path_cover(c, s).covered_count == brute_paths(c, s)


def test_brute_path_cover_limit():
    with pytest.raises(LimitExceeded):
        brute_path_cover(EdgeColoring.monochromatic(11, 2), 1)


def test_cycle_partition_examples():
    cert = brute_cycle_partition2(EdgeColoring.monochromatic(4, 2, 1))
    sizes = {p.color: len(p.vertices) for p in cert.pieces}
    assert sizes == {1: 4, 2: 0}
    # color 1 = perfect matching {12, 34}; color 2 = the 4-cycle 1-3-2-4
    c = EdgeColoring.from_function(4, 2, lambda x, y: 1 if (x, y) in {(1, 2), (3, 4)} else 2)
    cert = brute_cycle_partition2(c)
    sizes = {p.color: len(p.vertices) for p in cert.pieces}
    assert sizes == {1: 0, 2: 4}
    assert check_cover_certificate(c, cert.to_json()) == []


def test_cycle_partition_all_k6_classes():
    for c in enumerate_colorings(6, 2, VERTEX):
        cert = brute_cycle_partition2(c)
        assert cert is not None and cert.covered_count == 6
        assert check_cover_certificate(c, cert.to_json()) == []


def test_fewest_cycles(rng):
    assert len(brute_cycle_partition(EdgeColoring.monochromatic(5, 3, 2)).pieces) == 1
    for _ in range(20):
        c = random_coloring(int(rng.integers(2, 8)), 3, rng)
        cert = brute_cycle_partition(c)
        assert cert.covered_count == c.n
        assert check_cover_certificate(c, cert.to_json()) == []
        if c.t == 2:
            assert len(cert.pieces) <= 2


# -- H copies ------------------------------------------------------------------


def test_named_graphs():
    assert named_graph("triangle").edge_count() == 3
    assert named_graph("c5").edge_count() == 5
    with pytest.raises(InvariantError):
        named_graph("petersen")


def test_mono_copies_are_monochromatic(rng):
    c = random_coloring(7, 2, rng)
    for color in (1, 2):
        for img in iter_mono_copies(c, TRIANGLE, color):
            assert all(c.color(a, b) == color for a, b in itertools.combinations(img, 2))


def test_triangle_ramsey_number():
    assert verified_triangle_ramsey_number() == 6


def test_greedy_cover_examples():
    cert = greedy_h_cover(EdgeColoring.monochromatic(7, 2, 1), TRIANGLE, 6, 1)
    assert cert.covered_count == 6


def test_greedy_cover_bound_k20(rng):
    for _ in range(20):
        c = random_coloring(20, 2, rng)
        for s in (1, 2):
            cert = greedy_h_cover(c, TRIANGLE, 6, s)
            assert cert.covered_count >= s * (20 - 6) / 2
            assert check_cover_certificate(c, cert.to_json()) == []


def test_greedy_residue_has_no_copy(rng):
    for _ in range(30):
        c = random_coloring(int(rng.integers(3, 16)), int(rng.integers(1, 4)), rng)
        copies, residue = greedy_h_packing(c, TRIANGLE)
        assert not has_mono_copy(c, TRIANGLE, residue)


def test_nb_triangles_stay_inside_parts():
    c = nb_coloring(3, 3)
    for color in (1, 2, 3):
        for img in iter_mono_copies(c, TRIANGLE, color):
            assert len({(v - 1) // 3 for v in img}) == 1


@pytest.mark.parametrize("s, covered", [(1, 3), (2, 6), (3, 9)])
def test_tiling_nb_examples(s, covered):
    assert brute_h_tiling(nb_coloring(3, 3), TRIANGLE, s).covered_count == covered


def test_tiling_monochromatic():
    assert brute_h_tiling(EdgeColoring.monochromatic(6, 2, 1), TRIANGLE, 1).covered_count == 6


@pytest.mark.parametrize("t", [3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_tiling_nb_bound(t, m):
    c = nb_coloring(t, m)
    for s in range(1, t + 1):
        got = brute_h_tiling(c, TRIANGLE, s).covered_count
        # parts smaller than 3 hold no triangle, so equality needs m = 3
        assert got == (s * m if m == 3 else 0)
        assert got <= s * c.n // t


def test_tiling_against_greedy(rng):
    for _ in range(15):
        c = random_coloring(int(rng.integers(3, 10)), 2, rng)
        best = brute_h_tiling(c, TRIANGLE, 2)
        assert best.covered_count >= greedy_h_cover(c, TRIANGLE, 6, 2).covered_count
        assert check_cover_certificate(c, best.to_json()) == []


def test_h_validation():
    with pytest.raises(InvariantError):
        brute_h_tiling(EdgeColoring.monochromatic(5, 2), Graph.from_edges(4, [(1, 2), (3, 4)]), 1)
