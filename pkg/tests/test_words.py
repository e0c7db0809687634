import random
from collections import deque

import pytest
from hypothesis import given, strategies as st

from stringcone.words import (
    Move,
    apply_move,
    braid_move_path,
    commutation_equivalent,
    enumerate_reduced_words,
    extend_to_longest,
    initial_word,
    inversions,
    is_prefix_extension,
    is_reduced,
    local_moves,
    longest_element,
    permutation_of,
    random_braid_walk,
    sample_longest_words,
    validate_word,
)

from strategies import longest_words, reduced_words


def test_permutation_examples():
    assert permutation_of((), 2) == (1, 2, 3)
    assert permutation_of((1, 2, 1), 2) == (3, 2, 1)
    assert permutation_of((2,), 2) == (1, 3, 2)


def test_is_reduced_examples():
    assert is_reduced((1, 2, 1), 2)
    assert not is_reduced((1, 1), 2)
    assert is_reduced((2, 1, 2), 2)


def test_validate_rejects_bad_letters():
    with pytest.raises(ValueError):
        validate_word((0, 1), 2)
    with pytest.raises(ValueError):
        validate_word((3,), 2)


def test_local_moves_examples():
    assert local_moves((1, 2, 1)) == [Move("braid", 1)]
    assert apply_move((1, 2, 1), Move("braid", 1)) == (2, 1, 2)
    assert local_moves((1, 3)) == [Move("commute", 1)]
    assert apply_move((1, 3), Move("commute", 1)) == (3, 1)
    assert local_moves((1,)) == []


def test_extension_examples():
    assert extend_to_longest((1, 2, 3, 2, 1), 3) == (1, 2, 3, 2, 1, 2)
    assert extend_to_longest((2, 1, 3), 3) == (2, 1, 3, 2, 3, 1)
    w0 = (3, 2, 3, 1, 2, 3)
    assert extend_to_longest(w0, 3) == w0


def test_enumeration_counts():
    assert sorted(enumerate_reduced_words(longest_element(2))) == [(1, 2, 1), (2, 1, 2)]
    assert len(enumerate_reduced_words(longest_element(3))) == 16
    assert len(enumerate_reduced_words(longest_element(4))) == 768
    assert enumerate_reduced_words((1, 2, 3)) == [()]


def test_initial_word():
    assert initial_word(3) == (1, 2, 1, 3, 2, 1)
    assert permutation_of(initial_word(4), 4) == longest_element(4)


@given(reduced_words())
def test_moves_preserve_permutation(case):
    word, n = case
    perm = permutation_of(word, n)
    for mv in local_moves(word):
        moved = apply_move(word, mv)
        assert len(moved) == len(word)
        assert permutation_of(moved, n) == perm
        assert apply_move(moved, mv) == word


@given(reduced_words())
def test_extension_is_longest_with_prefix(case):
    word, n = case
    ext = extend_to_longest(word, n)
    assert len(ext) == n * (n + 1) // 2
    assert ext[:len(word)] == word
    assert is_prefix_extension(word, ext, n)


@pytest.mark.parametrize("n", [2, 3])
def test_enumeration_closed_and_connected(n):
    words = set(enumerate_reduced_words(longest_element(n)))
    start = next(iter(words))
    seen, queue = {start}, deque([start])
    while queue:
        w = queue.popleft()
        for mv in local_moves(w):
            v = apply_move(w, mv)
            assert v in words
            if v not in seen:
                seen.add(v)
                queue.append(v)
    assert seen == words


@given(st.permutations(range(1, 5)))
def test_enumeration_matches_inversions(perm):
    words = enumerate_reduced_words(perm)
    assert words
    for w in words:
        assert len(w) == inversions(perm)
        assert permutation_of(w, 3) == tuple(perm)


@given(longest_words(max_n=3), longest_words(max_n=3))
def test_braid_move_path_connects(a, b):
    (u, n), (v, m) = a, b
    if n != m:
        return
    w = u
    for mv in braid_move_path(u, v):
        w = apply_move(w, mv)
    assert w == v


def test_commutation_equivalence():
    assert commutation_equivalent((1, 3, 2), (3, 1, 2))
    assert not commutation_equivalent((1, 2, 1), (2, 1, 2))


def test_sampling_is_seeded():
    a = sample_longest_words(4, 5, seed=7)
    assert a == sample_longest_words(4, 5, seed=7)
    assert len(set(a)) == 5
    assert all(permutation_of(w, 4) == longest_element(4) for w in a)


def test_random_walk_stays_reduced():
    w, moves = random_braid_walk(initial_word(3), 30, random.Random(1))
    assert len(moves) == 30
    assert permutation_of(w, 3) == longest_element(3)
