from fractions import Fraction

import pytest

from surfcover.expectation import enumerate_homs, expected_fix
from surfcover.resolution import (
    BR_WITH_THETA,
    EPS_ADAPTED,
    aggregate_resolution,
    check_identity,
    entry_invariant_violations,
    expectation_identity,
    resolve_in_cover,
)
from surfcover.tiled_surface import cover_from_permutations


@pytest.fixture(scope="module")
def tables():
    return {w: aggregate_resolution(w, [1, 2, 3]) for w in ("a", "ab", "abAB", "aa")}


@pytest.mark.parametrize("word", ["a", "ab", "abAB", "aa"])
def test_identity_on_all_tuples(tables, word):
    for n in (1, 2, 3):
        report = check_identity(tables[word], n)
        assert report.ok, report


@pytest.mark.parametrize("word", ["a", "ab", "abAB"])
def test_orbit_route_matches_full_route(tables, word):
    for n in (2, 3):
        full = check_identity(tables[word], n)
        orbit = check_identity(tables[word], n, orbits=True)
        assert (full.covers, full.morphisms, full.factorizations, full.violations) == (
            orbit.covers,
            orbit.morphisms,
            orbit.factorizations,
            orbit.violations,
        )


@pytest.mark.parametrize("word", ["a", "ab", "abAB"])
def test_expectation_identity(tables, word):
    for n in (2, 3):
        lhs, rhs = expectation_identity(tables[word], n)
        assert lhs == rhs == expected_fix(word, n)


def test_entries_satisfy_invariants(tables):
    for table in tables.values():
        assert entry_invariant_violations(table) == []
        assert not table.contract_violations
        assert all(e.classification in (EPS_ADAPTED, BR_WITH_THETA) for e in table.entries.values())


def test_resolution_in_base_surface():
    Z = cover_from_permutations({f: (0,) for f in "abcd"})
    facs = resolve_in_cover("abAB", Z)
    assert len(facs) == 1
    assert facs[0].entry.octagons == 1


def test_aggregate_counts_weight_by_orbits(tables):
    table = tables["a"]
    assert table.covers_examined[3] == len(enumerate_homs(3))
    # every fixed point of a is one factorization
    total = sum(table.counts.values())
    expected = sum(expected_fix("a", n) * len(enumerate_homs(n)) for n in (1, 2, 3))
    assert Fraction(total) == expected
