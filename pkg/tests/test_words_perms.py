import random

import pytest
from hypothesis import given, strategies as st

from surfcover.perms import (
    adjacent_word,
    all_perms,
    compose,
    cycle_type,
    cycles,
    fixed_points,
    from_cycles,
    identity,
    inverse,
    is_permutation,
    random_perm,
    word_image,
)
from surfcover.words import (
    WordError,
    cyclic_class_key,
    cyclic_reduce,
    cyclically_reduced_words,
    free_reduce,
    inverse_word,
    parse_word,
    rotations,
    word_classes,
)

letters = st.sampled_from("abcdABCD")
words = st.text(alphabet="abcdABCD", max_size=12)


def perm_strategy(max_n=7):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def test_parse_rejects_foreign_letters():
    with pytest.raises(WordError):
        parse_word("abx")


def test_reductions():
    assert free_reduce("aAb") == "b"
    assert free_reduce("abBA") == ""
    assert cyclic_reduce("Aba") == "b"
    assert inverse_word("abC") == "cBA"
    assert rotations("abc") == ["abc", "bca", "cab"]


@given(words)
def test_free_reduce_idempotent_and_reduced(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(x != y.swapcase() for x, y in zip(r, r[1:]))


@given(words)
def test_inverse_cancels(w):
    assert free_reduce(w + inverse_word(w)) == ""


@given(words.filter(lambda w: cyclic_reduce(w) != ""), st.integers(0, 20))
def test_class_key_invariant_under_rotation_and_inversion(w, k):
    c = cyclic_reduce(w)
    rot = c[k % len(c):] + c[: k % len(c)]
    assert cyclic_class_key(rot) == cyclic_class_key(c) == cyclic_class_key(inverse_word(c))


def test_word_classes_cover_all_reduced_words():
    keys = {cyclic_class_key(w) for w in cyclically_reduced_words(3)}
    assert len(keys) == len(word_classes(3))


def test_perm_basics():
    p = from_cycles(4, [[0, 1, 2]])
    assert p == (1, 2, 0, 3)
    assert cycle_type(p) == (3, 1)
    assert fixed_points(p) == 1
    assert compose(p, inverse(p)) == identity(4)
    assert len(all_perms(4)) == 24


@given(perm_strategy(), st.data())
def test_compose_acts_on_the_left(p, data):
    q = data.draw(st.permutations(list(range(len(p)))).map(tuple))
    pq = compose(p, q)
    assert all(pq[x] == p[q[x]] for x in range(len(p)))
    assert is_permutation(pq)


@given(perm_strategy())
def test_cycles_rebuild_permutation(p):
    assert from_cycles(len(p), cycles(p)) == p
    assert sum(cycle_type(p)) == len(p)


@given(perm_strategy())
def test_adjacent_word_is_a_factorization(p):
    n = len(p)
    cur = identity(n)
    for k in adjacent_word(p):
        swap = list(range(n))
        swap[k], swap[k + 1] = k + 1, k
        cur = compose(cur, tuple(swap))
    assert cur == p


def test_word_image_matches_composition():
    rng = random.Random(3)
    perms = {f: random_perm(5, rng) for f in "abcd"}
    # read right to left: the first letter acts first
    assert word_image("ab", perms, 5) == compose(perms["b"], perms["a"])
