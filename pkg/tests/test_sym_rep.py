import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfcover.partition_algebra import SkewShape, character, enumerate_partitions, hook_dim
from surfcover.perms import compose, cycle_type, random_perm
from surfcover.sym_rep import (
    ShapeData,
    b_lambda_trace_contracted,
    b_lambda_trace_identity,
    character_value,
    construct_interchange,
    d_top,
    m_product,
    m_product_dense,
    rep_matrix,
    shape_triples,
    skew_matrix,
    tableau_tuples,
    transposition_matrix,
    upsilon,
    xi_n,
    xi_top_term,
)
from surfcover.tiled_surface import from_word, single_vertex

partitions = st.integers(2, 6).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def perms_of(n):
    return st.permutations(list(range(n))).map(tuple)


@pytest.mark.parametrize("lam", [(2, 1), (3, 2), (2, 2, 1), (3, 1, 1)])
def test_coxeter_relations(lam):
    shape = SkewShape(lam)
    n = sum(lam)
    s = [transposition_matrix(shape, k) for k in range(n - 1)]
    eye = np.eye(s[0].shape[0])
    for k in range(n - 1):
        assert np.allclose(s[k] @ s[k], eye)
        if k + 1 < n - 1:
            braid = s[k] @ s[k + 1]
            assert np.allclose(braid @ braid @ braid, eye)
        for j in range(k + 2, n - 1):
            assert np.allclose(s[k] @ s[j], s[j] @ s[k])


@given(partitions, st.data())
def test_representation_is_orthogonal_homomorphism(lam, data):
    n = sum(lam)
    g = data.draw(perms_of(n))
    h = data.draw(perms_of(n))
    G, H = rep_matrix(lam, g).entries, rep_matrix(lam, h).entries
    assert np.allclose(rep_matrix(lam, compose(g, h)).entries, G @ H)
    assert np.allclose(G @ G.T, np.eye(hook_dim(lam)))


@given(partitions, st.data())
def test_trace_is_the_character(lam, data):
    g = data.draw(perms_of(sum(lam)))
    assert character_value(lam, g) == pytest.approx(character(lam, cycle_type(g)), abs=1e-9)


def test_skew_matrix_restricts_to_window():
    shape = SkewShape((3, 2), (2,))
    # entries 2..4 fill one box in the first row and two in the second
    g = (0, 1, 3, 2, 4)
    assert skew_matrix(shape, g).dimension == 3
    with pytest.raises(ValueError):
        skew_matrix(shape, (1, 0, 2, 3, 4))


@pytest.mark.parametrize("word,n", [("a", 3), ("ab", 3), ("abc", 4), ("aB", 4)])
def test_interchange_family_is_valid(word, n):
    fam = construct_interchange(from_word(word), n)
    assert fam.violations() == []


def test_m_product_sparse_and_dense_agree():
    fam = construct_interchange(from_word("ab"), 4)
    checked = 0
    for data in shape_triples(fam):
        for tabs in itertools.islice(tableau_tuples(data), 5):
            assert m_product(fam, data, tabs) == pytest.approx(m_product_dense(fam, data, tabs), abs=1e-12)
            checked += 1
    assert checked > 0


def test_upsilon_is_sum_of_products():
    fam = construct_interchange(from_word("ab"), 3)
    for data in shape_triples(fam):
        total = sum(m_product(fam, data, tabs) for tabs in tableau_tuples(data))
        assert upsilon(fam, data) == pytest.approx(total, abs=1e-12)


def test_d_top_is_zero_for_the_trivial_shapes():
    fam = construct_interchange(from_word("a"), 3)
    for data in shape_triples(fam, lambda nu: nu == (2,)):
        if data.lam == (3,):
            for tabs in tableau_tuples(data):
                assert d_top(fam, data, tabs) == 0


def test_xi_top_term_matches_restricted_xi():
    for Y, n in [(from_word("a"), 4), (from_word("ab"), 4), (single_vertex(), 3)]:
        v = len(Y.vertices)
        nu = (n - v,) if n > v else ()
        assert xi_top_term(Y, n) == pytest.approx(xi_n(Y, n, lambda p: p == nu), rel=1e-9)


@pytest.mark.parametrize("lam", [(2,), (1, 1), (2, 1)])
def test_contraction_trace_identity(lam):
    import random

    rng = random.Random(sum(lam) * 7 + len(lam))
    n = sum(lam)
    gs = [random_perm(n, rng) for _ in range(8)]
    lhs, rhs = b_lambda_trace_identity(lam, gs)
    assert lhs == pytest.approx(rhs, abs=1e-9)
    assert b_lambda_trace_contracted(lam, gs) == pytest.approx(rhs, abs=1e-9)
