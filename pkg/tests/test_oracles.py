import itertools

import pytest
from hypothesis import given, strategies as st

from stringcone.oracles import demazure_character, demazure_dim, gt_count, partition_of, weyl_dim
from stringcone.words import enumerate_reduced_words, iter_words_of_all_perms, longest_element

from strategies import reduced_words


def test_weyl_examples():
    assert [weyl_dim((m,)) for m in range(5)] == [1, 2, 3, 4, 5]
    assert weyl_dim((1, 0)) == 3
    assert weyl_dim((1, 1)) == 8
    assert weyl_dim((1, 1, 1)) == 64


def test_gt_examples():
    assert gt_count((0, 0)) == 1
    assert gt_count((1, 0)) == 3
    assert gt_count((1, 1)) == 8


def test_partition():
    assert partition_of((1, 0, 2)) == (3, 2, 2, 0)


def test_demazure_examples():
    assert demazure_dim((), (1, 1), 2) == 1
    assert demazure_dim((1,), (1,), 1) == 2
    assert demazure_dim((1, 2, 1), (1, 1), 2) == 8
    assert demazure_dim((1,), (0, 1), 2) == 1


def test_rejects_negative_weight():
    with pytest.raises(ValueError):
        weyl_dim((1, -1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gt_equals_weyl(n):
    for weight in itertools.product(range(4), repeat=n):
        assert gt_count(weight) == weyl_dim(weight)


@pytest.mark.parametrize("n", [2, 3])
def test_demazure_of_longest_is_full(n):
    for w in enumerate_reduced_words(longest_element(n))[:4]:
        for weight in itertools.product(range(3), repeat=n):
            assert demazure_dim(w, weight, n) == weyl_dim(weight)


@pytest.mark.parametrize("n", [2, 3])
def test_demazure_independent_of_word(n):
    seen: dict = {}
    for perm, w in iter_words_of_all_perms(n):
        for weight in itertools.product(range(2), repeat=n):
            char = demazure_character(w, weight, n)
            assert seen.setdefault((perm, weight), char) == char


@given(reduced_words(max_n=3), st.data())
def test_demazure_monotone_along_prefixes(case, data):
    word, n = case
    weight = data.draw(st.tuples(*[st.integers(0, 2)] * n))
    dims = [demazure_dim(word[:k], weight, n) for k in range(len(word) + 1)]
    assert dims == sorted(dims)
    assert dims[-1] <= weyl_dim(weight)
