import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from surfcover.partition_algebra import (
    SkewShape,
    character,
    class_size,
    conjugate,
    contains,
    enumerate_partitions,
    falling,
    grow,
    hook_dim,
    join_tableaux,
    mednykh_count,
    outside_first_column,
    outside_first_row,
    pochhammer,
    restricted_zeta,
    shrink,
    skew_dim,
    skew_tableaux,
    top_row,
    witten_zeta,
)

partitions = st.integers(1, 9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_partition_counts():
    assert [len(enumerate_partitions(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_hook_dims():
    assert hook_dim((3, 2)) == 5
    assert hook_dim((2, 2)) == 2
    assert hook_dim((3, 2, 1)) == 16
    assert hook_dim((4, 1)) == 4


@pytest.mark.parametrize("n", range(1, 9))
def test_sum_of_squared_dimensions(n):
    assert sum(hook_dim(lam) ** 2 for lam in enumerate_partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_character_orthogonality(n):
    classes = enumerate_partitions(n)
    for lam, mu in itertools.product(classes, repeat=2):
        inner = sum(class_size(rho) * character(lam, rho) * character(mu, rho) for rho in classes)
        assert inner == (math.factorial(n) if lam == mu else 0)


@given(partitions)
def test_conjugate_involution_and_dimension(lam):
    assert conjugate(conjugate(lam)) == lam
    assert hook_dim(conjugate(lam)) == hook_dim(lam)
    assert outside_first_row(conjugate(lam)) == outside_first_column(lam)


@given(partitions)
def test_character_at_identity_is_dimension(lam):
    assert character(lam, (1,) * sum(lam)) == hook_dim(lam)


@given(partitions, st.integers(0, 3))
def test_skew_dimension_counts_tableaux(lam, k):
    for nu in shrink(lam, min(k, sum(lam))):
        shape = SkewShape(lam, nu)
        assert skew_dim(shape) == len(skew_tableaux(shape))
        assert contains(lam, nu)


def test_branching_rule():
    lam = (3, 2, 1)
    assert hook_dim(lam) == sum(hook_dim(mu) for mu in shrink(lam, 1))
    assert set(grow((2, 1), 1)) == {(3, 1), (2, 2), (2, 1, 1)}


def test_join_and_top_row():
    shape_low = SkewShape((2, 1), ())
    low = skew_tableaux(shape_low)[0]
    high = skew_tableaux(SkewShape((3, 1), (2, 1)))[0]
    joined = join_tableaux(low, high)
    assert set(top_row(joined)) >= set(top_row(low))


def test_zeta_values():
    assert witten_zeta(3, 2) == Fraction(9, 4)
    assert witten_zeta(4, 2) == Fraction(89, 36)
    assert witten_zeta(5, 2) == Fraction(4019, 1800)


def test_mednykh_counts():
    assert [mednykh_count(n) for n in range(1, 5)] == [1, 16, 486, 34176]
    # genus one counts commuting pairs: n! times the number of partitions
    assert mednykh_count(4, 1) == 24 * 5


def test_restricted_zeta():
    n = 6
    assert restricted_zeta(n, 0, 2) == witten_zeta(n, 2)
    values = [restricted_zeta(n, b, 2) for b in range(n)]
    assert all(x >= y for x, y in zip(values, values[1:]))
    # b >= 2: (4,2), (4,1,1), (3,3), (3,2,1), (3,1,1,1), (2,2,2), (2,2,1,1)
    assert values[2] == Fraction(2, 81) + Fraction(2, 100) + Fraction(2, 25) + Fraction(1, 256)


def test_falling_and_pochhammer():
    assert falling(5, 2) == 20
    assert falling(3, 4) == 0
    assert falling(7, 0) == 1
    assert pochhammer(5, 2) == falling(5, 2)
