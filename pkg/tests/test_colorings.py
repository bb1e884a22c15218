from __future__ import annotations

import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramcover.canon import (
    RAW,
    VERTEX,
    VERTEX_COLOR,
    canonical_code,
    enumerate_colorings,
    estimate_nodes,
)
from ramcover.colorings import (
    EdgeColoring,
    cockayne_lorimer_coloring,
    cockayne_lorimer_parts,
    crossing_assignment,
    extremal_main_coloring,
    extremal_main_parts,
    nb_coloring,
    nb_rule_violations,
    pair_index,
    pairs,
    partition_coloring,
    random_coloring,
    read_coloring,
    validate,
    write_coloring,
)
from ramcover.errors import InvariantError, LimitExceeded
from support import all_colorings, burnside_classes, colorings


# -- storage -----------------------------------------------------------------


def test_pair_index_is_row_major():
    n = 6
    assert [pair_index(n, x, y) for x, y in pairs(n)] == list(range(math.comb(n, 2)))
    assert pair_index(n, 5, 2) == pair_index(n, 2, 5)


@given(colorings())
def test_relabel_and_recolor_preserve_structure(c):
    perm = list(range(c.n, 0, -1))
    image = c.relabel(perm)
    for x, y in pairs(c.n):
        assert image.color(perm[x - 1], perm[y - 1]) == c.color(x, y)
    cperm = list(range(c.t, 0, -1))
    swapped = c.recolor(cperm)
    for x, y in pairs(c.n):
        assert swapped.color(x, y) == cperm[c.color(x, y) - 1]


def test_extend_and_induced_are_inverse(rng):
    c = random_coloring(6, 3, rng)
    bigger = c.extend([1, 2, 3, 1, 2, 3])
    assert bigger.induced(range(1, 7)) == c
    assert [bigger.color(v, 7) for v in range(1, 7)] == [1, 2, 3, 1, 2, 3]


# -- partition vectors ---------------------------------------------------------


def test_partition_examples():
    c = partition_coloring([1, 3])
    assert [c.color(1, v) for v in (2, 3, 4)] == [1, 1, 1]
    assert [c.color(x, y) for x, y in ((2, 3), (2, 4), (3, 4))] == [2, 2, 2]
    assert set(partition_coloring([4]).colors) == {1}
    c = partition_coloring([1, 2, 5])
    assert c.n == 8 and c.color(2, 3) == 2 and c.color(4, 8) == 3


@given(st.lists(st.integers(0, 4), min_size=1, max_size=5).filter(lambda p: sum(p) >= 1))
def test_partition_min_index_rule(parts):
    c = partition_coloring(parts)
    block = [j + 1 for j, size in enumerate(parts) for _ in range(size)]
    for x, y in pairs(c.n):
        assert c.color(x, y) == min(block[x - 1], block[y - 1])


def test_partition_rejects_empty_and_negative():
    with pytest.raises(InvariantError):
        partition_coloring([0, 0])
    with pytest.raises(InvariantError):
        partition_coloring([2, -1])


@pytest.mark.parametrize(
    "t, k, parts",
    [(2, 2, [1, 3]), (3, 4, [1, 2, 5]), (3, 3, [0, 0, 5]), (4, 7, [0, 0, 0, 13]), (4, 8, [1, 2, 4, 9])],
)
def test_extremal_main_examples(t, k, parts):
    assert extremal_main_parts(t, k) == parts
    assert extremal_main_coloring(t, k).n == sum(parts)


def test_extremal_main_sizes():
    for t in range(2, 8):
        for k in range(1, 60):
            parts = extremal_main_parts(t, k)
            p = (k - 1) // (2 ** (t - 1) - 1)
            assert len(parts) == t and min(parts) >= 0
            assert sum(parts) == 2 * k - 1 + p
            assert parts[:-1] == [p * 2**i for i in range(t - 1)]


def test_extremal_main_rejects_t1():
    with pytest.raises(InvariantError):
        extremal_main_parts(1, 3)


@pytest.mark.parametrize("t, p, parts", [(2, 1, [1, 3]), (3, 2, [2, 2, 5]), (2, 3, [3, 7])])
def test_cockayne_lorimer_examples(t, p, parts):
    assert cockayne_lorimer_parts(t, p) == parts
    assert cockayne_lorimer_coloring(t, p).n == (t + 1) * p + 1


# -- nb blow-up ----------------------------------------------------------------


def test_nb_t3_crossing_colors():
    assign, method = crossing_assignment(3)
    assert assign == {(1, 2): 3, (1, 3): 2, (2, 3): 1}
    assert method == "round-robin"
    c = nb_coloring(3, 3)
    assert c.color(1, 4) == 3 and c.color(1, 7) == 2 and c.color(4, 7) == 1
    assert [c.color(1, 2), c.color(4, 5), c.color(8, 9)] == [1, 2, 3]


def test_nb_single_vertex_parts():
    c = nb_coloring(3, 1)
    assert list(c.colors) == [3, 2, 1]


@pytest.mark.parametrize("t", range(3, 9))
@pytest.mark.parametrize("part_size", [1, 2, 3])
def test_nb_rules_hold(t, part_size):
    c = nb_coloring(t, part_size)
    assert c.n == t * part_size
    assert nb_rule_violations(c, part_size) == []


def test_nb_even_t_uses_search():
    assert crossing_assignment(4)[1] == "search"


def test_nb_rule_checker_catches_violations():
    c = nb_coloring(3, 2)
    broken = bytearray(c.colors)
    broken[pair_index(6, 1, 3)] = 1  # crossing edge between parts 1 and 2 given color 1
    assert nb_rule_violations(EdgeColoring(6, 3, bytes(broken)), 2)


def test_nb_needs_three_colors():
    with pytest.raises(InvariantError):
        crossing_assignment(2)


# -- validation and files ------------------------------------------------------


def test_validate_examples():
    assert validate(partition_coloring([2, 3])) == []
    bad = EdgeColoring(3, 2, bytes([1, 3, 2]))
    (msg,) = validate(bad)
    assert "(1,3)" in msg
    short = EdgeColoring(3, 2, bytes([1, 2]))
    assert any("missing" in m for m in validate(short))


def test_file_round_trip(tmp_path, rng):
    c = random_coloring(7, 4, rng)
    write_coloring(c, tmp_path / "c.json")
    assert read_coloring(tmp_path / "c.json") == c


def test_truncated_file_names_expected_length(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"n": 4, "t": 2, "colors": [1, 2, 1]}))
    with pytest.raises(InvariantError, match=r"C\(n,2\) = 6"):
        read_coloring(tmp_path / "c.json")


def test_zero_color_rejected():
    with pytest.raises(InvariantError, match="1..2"):
        EdgeColoring.from_json({"n": 3, "t": 2, "colors": [1, 0, 2]})


# -- canonical codes -----------------------------------------------------------


def test_canonical_code_examples():
    c = partition_coloring([1, 3])
    assert canonical_code(c, VERTEX) == canonical_code(c.relabel([3, 1, 4, 2]), VERTEX)
    assert canonical_code(c, VERTEX_COLOR) == canonical_code(c.recolor([2, 1]), VERTEX_COLOR)
    ones = EdgeColoring.monochromatic(4, 2, 1)
    twos = EdgeColoring.monochromatic(4, 2, 2)
    assert canonical_code(ones, VERTEX) != canonical_code(twos, VERTEX)
    assert canonical_code(ones, VERTEX_COLOR) == canonical_code(twos, VERTEX_COLOR)


def test_canonical_code_invariant_under_relabelling(rng):
    for n, t in [(5, 2), (6, 3), (7, 2), (8, 3), (9, 4)]:
        c = random_coloring(n, t, rng)
        base = canonical_code(c, VERTEX)
        base_vc = canonical_code(c, VERTEX_COLOR)
        for _ in range(100):
            perm = (rng.permutation(n) + 1).tolist()
            cperm = (rng.permutation(t) + 1).tolist()
            assert canonical_code(c.relabel(perm), VERTEX) == base
            assert canonical_code(c.relabel(perm).recolor(cperm), VERTEX_COLOR) == base_vc


def test_canonical_code_separates_classes():
    # distinct codes on 4 vertices, 2 colors: one per isomorphism class of graphs
    codes = {canonical_code(c, VERTEX) for c in all_colorings(4, 2)}
    assert len(codes) == 11


def test_structured_colorings_invariance(rng):
    # highly symmetric inputs stress the refinement and twin pruning
    for c in (nb_coloring(3, 3), extremal_main_coloring(3, 4), cockayne_lorimer_coloring(3, 2)):
        base = canonical_code(c, VERTEX)
        for _ in range(30):
            perm = (rng.permutation(c.n) + 1).tolist()
            assert canonical_code(c.relabel(perm), VERTEX) == base


# -- enumeration ---------------------------------------------------------------


@pytest.mark.parametrize(
    "n, t, mode, classes",
    [(3, 2, VERTEX, 4), (2, 3, VERTEX_COLOR, 1), (3, 2, VERTEX_COLOR, 2)],
)
def test_class_count_examples(n, t, mode, classes):
    assert sum(1 for _ in enumerate_colorings(n, t, mode)) == classes


def feasible_grid():
    """(n, t) with n >= 2 and t^C(n,2) <= 10^6, t capped at 20 for n <= 3."""
    out = []
    for n in range(2, 8):
        for t in range(1, 21):
            if t ** math.comb(n, 2) <= 10**6:
                out.append((n, t))
    return out


@pytest.mark.parametrize("n, t", feasible_grid())
def test_class_counts_match_burnside(n, t):
    reps = list(enumerate_colorings(n, t, VERTEX))
    assert len(reps) == burnside_classes(n, t, with_colors=False)
    assert len({canonical_code(c, VERTEX) for c in reps}) == len(reps)
    reps = list(enumerate_colorings(n, t, VERTEX_COLOR))
    assert len(reps) == burnside_classes(n, t, with_colors=True)
    assert len({canonical_code(c, VERTEX_COLOR) for c in reps}) == len(reps)


def test_raw_mode_counts():
    assert sum(1 for _ in enumerate_colorings(4, 2, RAW)) == 64


@pytest.mark.parametrize("mode", [VERTEX, VERTEX_COLOR, RAW])
def test_shards_partition_the_enumeration(mode):
    whole = sorted(c.colors for c in enumerate_colorings(5, 2, mode))
    parts = [sorted(c.colors for c in enumerate_colorings(5, 2, mode, shard=(i, 4))) for i in range(4)]
    assert sum(len(p) for p in parts) == len(whole)
    assert sorted(itertools.chain.from_iterable(parts)) == whole


def test_budget_refuses_large_enumeration(monkeypatch):
    with pytest.raises(LimitExceeded):
        next(enumerate_colorings(9, 3, VERTEX, budget=1000))
    monkeypatch.setenv("RC_NODE_BUDGET", "10")
    with pytest.raises(LimitExceeded):
        next(enumerate_colorings(6, 2, RAW))
    assert estimate_nodes(6, 2, RAW) == 2**15


def test_bad_shard_rejected():
    with pytest.raises(InvariantError):
        next(enumerate_colorings(4, 2, VERTEX, shard=(4, 4)))


def test_random_coloring_is_seeded():
    a = random_coloring(10, 3, np.random.default_rng(5))
    b = random_coloring(10, 3, np.random.default_rng(5))
    assert a == b and validate(a) == []
