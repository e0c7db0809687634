import pytest
from hypothesis import given

from stringcone.arrangement import Arrangement
from stringcone.gp_paths import (
    GpPath,
    all_paths,
    enumerate_paths,
    induce_path,
    is_rigorous,
    path_area,
    path_normal,
    restrict_path,
)
from stringcone.polyhedra import implies
from stringcone.words import extend_to_longest, initial_word, iter_words_of_all_perms

from strategies import reduced_words

SL3 = Arrangement((1, 2, 1), 2)
P1 = GpPath(1, 1, 2, ((1, 3), (1, 2), (2, 3)))
P2 = GpPath(1, 1, 2, ((1, 3), (2, 3)))
P3 = GpPath(2, 2, 3, ((2, 3),))


def test_sl3_paths():
    assert set(enumerate_paths(SL3, 1)) == {P1, P2}
    assert enumerate_paths(SL3, 2) == [P3]


def test_no_paths_without_inversion():
    assert enumerate_paths(Arrangement((2,), 2), 1) == []


def test_sl3_normals():
    assert path_normal(SL3, P1) == {(1, 2): 1}
    assert path_normal(SL3, P2) == {(1, 3): 1, (2, 3): -1}
    assert path_normal(SL3, P3) == {(2, 3): 1}


def test_sl3_areas():
    assert path_area(SL3, P1) == {(1, 2), (1, 3)}
    assert path_area(SL3, P2) == {(1, 3)}
    assert path_area(SL3, P3) == {(2, 3)}


def test_sl5_long_path_area():
    arr = Arrangement(initial_word(4), 4)
    p = GpPath(1, 1, 2, ((1, 5), (1, 4), (1, 3), (1, 2), (2, 3), (2, 4), (2, 5)))
    assert p in enumerate_paths(arr, 1)
    assert path_area(arr, p) == {(1, 2), (1, 3), (1, 4), (1, 5)}


def test_restriction_splits_path_in_two():
    arr0 = Arrangement((2, 1, 3, 2, 3, 1), 3)
    arr = Arrangement((2, 1, 3), 3)
    p = next(q for q in enumerate_paths(arr0, 2)
             if [arr0.crossing_of(v).position for v in q.vertices] == [5, 3, 4, 2, 6])
    pieces = restrict_path(p, arr0, arr)
    assert [[arr.crossing_of(v).position for v in q.vertices] for q in pieces] == [[3], [2]]
    assert all(q in enumerate_paths(arr, 2) for q in pieces)
    # The restricted inequality is the sum of the two piece inequalities.
    space = [c.lines for c in arr.crossings]
    rows = [[path_normal(arr, q).get(c, 0) for c in space] for q in pieces]
    total = [a + b for a, b in zip(*rows)]
    assert implies(rows, total).holds


def test_restriction_of_path_left_of_cut():
    arr0 = Arrangement((1, 2, 1), 2)
    arr = Arrangement((1, 2), 2)
    p = GpPath(1, 1, 3, ((1, 3),))
    assert p in enumerate_paths(arr, 1)
    assert restrict_path(induce_path(p, arr, arr0), arr0, arr) == [p]


def test_induce_on_longest_word_is_identity():
    for p in all_paths(SL3):
        assert induce_path(p, SL3, SL3) == p


@pytest.mark.parametrize("n", [2, 3])
def test_restrict_induce_identity(n):
    for _, w in iter_words_of_all_perms(n):
        arr = Arrangement(w, n)
        arr0 = Arrangement(extend_to_longest(w, n), n)
        for p in all_paths(arr):
            q = induce_path(p, arr, arr0)
            assert is_rigorous(arr0, q)
            assert restrict_path(q, arr0, arr) == [p]


def test_induced_paths_rigorous_in_extension():
    arr = Arrangement((1, 2, 3, 2, 1), 3)
    arr0 = Arrangement((1, 2, 3, 2, 1, 2), 3)
    for p in all_paths(arr):
        assert is_rigorous(arr0, induce_path(p, arr, arr0))


@given(reduced_words())
def test_paths_are_rigorous_and_contained(case):
    arr = Arrangement(*case)
    for p in all_paths(arr):
        i = p.orientation
        assert is_rigorous(arr, p)
        assert p.source <= i < p.sink
        for label in path_area(arr, p):
            below = arr.lines_below(label)
            assert i + 1 in below and i not in below


@given(reduced_words(max_n=4))
def test_restriction_normals_are_additive(case):
    word, n = case
    arr0 = Arrangement(extend_to_longest(word, n), n)
    arr = Arrangement(word, n)
    inside = {c.lines for c in arr.crossings}
    for p in all_paths(arr0):
        total: dict = {}
        for q in restrict_path(p, arr0, arr):
            assert is_rigorous(arr, q)
            for k, v in path_normal(arr, q).items():
                total[k] = total.get(k, 0) + v
        projected = {k: v for k, v in path_normal(arr0, p).items() if k in inside}
        assert {k: v for k, v in total.items() if v} == projected


def test_path_context_collapses_runs_through_region():
    from stringcone.gp_paths import GpPath, path_context

    p = GpPath(1, 1, 2, ((1, 3), (1, 2), (2, 3)))
    assert path_context(p, set()) == (1, 1, 2, ((1, 3), (1, 2), (2, 3)))
    lines = p.lines_walked()
    assert path_context(p, {(1, 2), (2, 3)}) == (1, 1, 2, ((1, 3), ("through", lines[1], lines[3])))
