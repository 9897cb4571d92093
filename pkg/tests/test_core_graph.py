import itertools
import math
from fractions import Fraction

import pytest

from surfcover.core_graph import (
    QuotientTerm,
    enumerate_Q,
    hat_graph,
    quotient_term_counts,
    vertex_only_surface,
    xi_nu_top,
    xstar_count_bruteforce,
    xstar_frobenius,
    xstar_rational,
)
from surfcover.perms import all_perms, compose, inverse
from surfcover.sym_rep import xi_top_term
from surfcover.tiled_surface import from_word, single_vertex
from surfcover.words import RELATOR


def test_hat_graph_of_a_vertex():
    H = hat_graph(single_vertex())
    assert len(H.vertices) == 8
    assert len(H.edges) == 8
    assert H.is_folded()


def test_hat_graph_keeps_vertices_distinct():
    Y = from_word("ab")
    H = hat_graph(Y)
    assert set(Y.vertices) <= set(H.vertices)
    assert H.is_folded()


def test_quotient_counts():
    assert len(enumerate_Q(single_vertex())) == 908
    assert len(enumerate_Q(from_word("a"))) == 159


def test_term_counts_add_up():
    counts = quotient_term_counts(hat_graph(from_word("a")))
    assert sum(counts.values()) == 159


def test_quotient_term_value():
    term = QuotientTerm(vertices=2, edges_by_letter=(1, 1, 0, 0), euler_characteristic=0)
    assert term.value(4) == Fraction(12, 16)


def naive_xstar_vertex(n):
    """Tuples whose relator word fixes the last point, by direct enumeration."""
    perms = all_perms(n)
    count = 0
    top = n - 1
    for a, b, c, d in itertools.product(perms, repeat=4):
        w = compose(inverse(d), inverse(c), d, c, inverse(b), inverse(a), b, a)
        count += w[top] == top
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vertex_formula_against_naive_enumeration(n):
    formula = xstar_rational(single_vertex())
    assert formula.evaluate(n) == naive_xstar_vertex(n) == xstar_frobenius(1, n)


@pytest.mark.parametrize("n", range(1, 6))
def test_formula_matches_enumeration_for_a_loop(n):
    Y = from_word("a")
    assert xstar_rational(Y).evaluate(n) == xstar_count_bruteforce(Y, n)


@pytest.mark.parametrize("n", range(2, 6))
def test_frobenius_two_vertices(n):
    assert xstar_frobenius(2, n) == xstar_count_bruteforce(vertex_only_surface(2), n)


def test_evaluate_rejects_small_degree():
    with pytest.raises(ValueError):
        xstar_rational(from_word("ab")).evaluate(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_top_term(n):
    Y = from_word("a")
    assert float(xi_nu_top(Y, n)) == pytest.approx(xi_top_term(Y, n), rel=1e-9)


def test_relator_word():
    assert RELATOR == "abABcdCD"
