from fractions import Fraction

import numpy as np
import pytest

from surfcover.expectation import (
    EnumerationLimitError,
    conjugation_orbits,
    convergence_table,
    divisor_count,
    embedding_counts,
    en_emb_formula,
    enumerate_homs,
    enumerate_homs_full,
    expected_embeddings,
    expected_fix,
    expected_morphisms,
    fixed_point_counts,
    is_proper_power,
    morphism_counts,
    sorted_tuples,
)
from surfcover.partition_algebra import mednykh_count
from surfcover.perms import compose, fixed_points, inverse, word_image
from surfcover.tiled_surface import from_word, single_vertex


@pytest.mark.parametrize("n", range(1, 5))
def test_bucket_and_full_enumeration_agree(n):
    buckets, full = enumerate_homs(n), enumerate_homs_full(n)
    assert len(buckets) == len(full) == mednykh_count(n)
    assert np.array_equal(sorted_tuples(buckets), sorted_tuples(full))


def test_enumeration_cap():
    with pytest.raises(EnumerationLimitError):
        enumerate_homs(6)


def test_every_tuple_satisfies_the_relator():
    ens = enumerate_homs(3)
    for i in range(0, len(ens), 11):
        a, b, c, d = ens.cover(i).perms
        comm_ab = compose(inverse(b), inverse(a), b, a)
        comm_cd = compose(inverse(d), inverse(c), d, c)
        assert compose(comm_cd, comm_ab) == tuple(range(3))


def test_fixed_point_counts_match_direct_evaluation():
    ens = enumerate_homs(3)
    counts = fixed_point_counts("aBc", ens.tuples)
    for i in range(0, len(ens), 7):
        perms = ens.cover(i).as_dict()
        assert counts[i] == fixed_points(word_image("aBc", perms, 3))


def test_expected_fix_examples():
    assert expected_fix("a", 2) == 1
    assert expected_fix("aa", 2) == 2
    assert expected_fix("a", 3) == Fraction(10, 9)
    assert expected_fix("aa", 3) == 2
    assert expected_fix("a", 5) == Fraction(4438, 4019)


def test_fix_is_morphisms_of_the_cycle():
    for w in ("a", "ab", "abAB"):
        assert expected_fix(w, 3) == expected_morphisms(from_word(w), 3)


def test_embeddings_bounded_by_morphisms():
    ens = enumerate_homs(3)
    for w in ("a", "aa", "abc"):
        Y = from_word(w)
        assert np.all(embedding_counts(Y, ens.tuples) <= morphism_counts(Y, ens.tuples))


def test_single_vertex_embeds_everywhere():
    assert expected_embeddings(single_vertex(), 4) == 4


@pytest.mark.parametrize("n", [3, 4])
def test_representation_formula(n):
    for Y in (single_vertex(), from_word("a"), from_word("ab")):
        assert en_emb_formula(Y, n) == pytest.approx(float(expected_embeddings(Y, n)), rel=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_conjugation_orbits_partition_the_ensemble(n):
    ens = enumerate_homs(n)
    reps, sizes = conjugation_orbits(ens)
    assert int(sizes.sum()) == len(ens)
    # fixed point counts are class functions, so orbit weighting preserves expectations
    weighted = Fraction(int((fixed_point_counts("ab", reps) * sizes).sum()), len(ens))
    assert weighted == expected_fix("ab", n)


def test_powers_and_divisors():
    assert is_proper_power("abab") == (True, "ab", 2)
    assert is_proper_power("ab") == (False, "ab", 1)
    assert divisor_count(6) == 4
    assert divisor_count(1) == 1


def test_convergence_table_targets():
    rows = convergence_table("aa", [2, 3])
    assert [r["target"] for r in rows] == [2, 2]
    assert rows[0]["error"] == 0
