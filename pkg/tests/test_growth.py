import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from surfcover.expectation import enumerate_homs
from surfcover.growth import GrowthError, br_closure, ovb, ovb_contract_violations, theta
from surfcover.tiled_surface import (
    cover_from_permutations,
    from_word,
    image_surface,
    is_boundary_reduced,
    is_eps_adapted,
    morphism_from,
    single_vertex,
)
from surfcover.words import cyclic_reduce

words = st.text(alphabet="abcdABCD", min_size=1, max_size=6).filter(lambda w: cyclic_reduce(w) != "")

# Fragments of the relator reach long blocks and chains far more often.
relator_heavy = st.sampled_from(["abAB", "abABc", "aBcDab", "abABcdC", "abcdABCD", "abABcdCDab"]) | words


def cover(n, index):
    ens = enumerate_homs(n)
    return cover_from_permutations(ens.cover(index % len(ens)).as_dict())


def images(word, Z):
    C = from_word(word)
    root = C.vertices[0]
    for z in Z.vertices:
        h = morphism_from(C, Z, root, z)
        if h is not None:
            yield image_surface(h, C)


def test_theta_examples():
    assert theta(single_vertex()) == 0
    assert theta(from_word("abc")) == -6
    assert theta(cover(1, 0)) == 1


def test_closed_surface_is_fixed():
    Z = cover(2, 3)
    out, trace = ovb(Z, Z)
    assert out == Z
    assert trace.a_visits == 1


def test_eps_above_bound_is_rejected():
    Z = cover(1, 0)
    with pytest.raises(GrowthError):
        ovb(single_vertex(), Z, Fraction(1, 8))


def test_commutator_grows_an_octagon_in_the_base():
    Z = cover(1, 0)
    U = next(images("abAB", Z))
    out, trace = ovb(U, Z)
    assert out.octagons
    assert ovb_contract_violations(U, out, trace) == []


@settings(max_examples=60)
@given(words, st.integers(2, 4), st.integers(0, 10**6))
def test_ovb_contracts_on_random_covers(word, n, index):
    Z = cover(n, index)
    for U in images(word, Z):
        out, trace = ovb(U, Z)
        assert ovb_contract_violations(U, out, trace) == []
        s = out.stats()
        assert is_eps_adapted(out) or (is_boundary_reduced(out) and s.octagons > s.boundary_length)
        assert set(U.vertices) <= set(out.vertices)


@settings(max_examples=30)
@given(words, st.integers(2, 4), st.integers(0, 10**6))
def test_br_closure_is_boundary_reduced(word, n, index):
    Z = cover(n, index)
    for U in images(word, Z):
        out, trace = br_closure(U, Z)
        assert is_boundary_reduced(out)
        assert all(s.after[0] <= s.before[0] for s in trace.steps)


@settings(max_examples=40)
@given(relator_heavy, st.integers(2, 4), st.integers(0, 10**6), st.integers(0, 2**32))
def test_br_closure_is_independent_of_move_order(word, n, index, seed):
    Z = cover(n, index)
    for U in images(word, Z):
        canonical, _ = br_closure(U, Z)
        shuffled, _ = br_closure(U, Z, rng=random.Random(seed))
        assert shuffled == canonical


def test_ovb_zero_eps_reaches_boundary_reduced():
    rng = random.Random(5)
    for _ in range(10):
        Z = cover(4, rng.randrange(10**6))
        for U in images("aBcD", Z):
            out, _ = ovb(U, Z, 0)
            assert is_boundary_reduced(out)
