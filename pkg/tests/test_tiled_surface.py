import random

import pytest
from hypothesis import given, strategies as st

from surfcover.expectation import enumerate_homs
from surfcover.tiled_surface import (
    SurfaceError,
    TiledSurface,
    are_isomorphic,
    boundary_cycles,
    canonical_form,
    classify_boundary,
    connected_subsurfaces,
    cover_from_permutations,
    embeddings,
    find_bad_piece,
    fold,
    from_word,
    is_boundary_reduced,
    is_eps_adapted,
    morphism_from,
    morphisms,
    quotient_multiplicities,
    quotients_of_cycle,
    rooted_code,
    single_vertex,
    surface_from_code,
)
from surfcover.words import cyclic_reduce

words = st.text(alphabet="abcdABCD", min_size=1, max_size=8).filter(lambda w: cyclic_reduce(w) != "")


def degree_two_cover():
    return cover_from_permutations({"a": (1, 0), "b": (0, 1), "c": (0, 1), "d": (0, 1)})


def random_cover(n, seed):
    ens = enumerate_homs(n)
    return cover_from_permutations(ens.cover(random.Random(seed).randrange(len(ens))).as_dict())


def test_word_cycle_stats():
    s = from_word("abc").stats()
    assert (s.vertices, s.edges, s.octagons, s.boundary_length, s.euler_characteristic) == (3, 3, 0, 6, 0)


def test_cover_is_boundaryless():
    Z = degree_two_cover()
    assert Z.is_boundaryless()
    assert boundary_cycles(Z) == []
    assert Z.stats().euler_characteristic == -4


def test_unfolded_edges_are_rejected():
    with pytest.raises(SurfaceError):
        TiledSurface((0, 1, 2), (("a", 0, 1), ("a", 0, 2)))


def test_folding_merges_targets():
    Y, mapping = fold((0, 1, 2), (("a", 0, 1), ("a", 0, 2)))
    assert len(Y.vertices) == 2
    assert mapping[1] == mapping[2]


@given(words)
def test_boundary_length_matches_walked_cycles(w):
    Y = from_word(w)
    assert sum(c.length for c in boundary_cycles(Y)) == 2 * len(Y.edges) - 8 * len(Y.octagons)


@pytest.mark.parametrize("seed", range(4))
def test_walked_boundary_on_subsurfaces(seed):
    Z = random_cover(2, seed)
    for Y in connected_subsurfaces(Z):
        s = Y.stats()
        assert sum(c.length for c in boundary_cycles(Y)) == s.boundary_length
        assert s.boundary_length == 2 * s.edges - 8 * s.octagons


@given(words, st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(w, rnd):
    Y = from_word(w)
    labels = list(range(100, 100 + len(Y.vertices)))
    rnd.shuffle(labels)
    Yr = Y.relabel(dict(zip(Y.vertices, labels)))
    assert canonical_form(Yr) == canonical_form(Y)
    assert are_isomorphic(Y, Yr)


def test_canonical_form_separates_non_isomorphic():
    assert canonical_form(from_word("ab")) != canonical_form(from_word("aB"))
    assert not are_isomorphic(from_word("ab"), from_word("aB"))


@given(words)
def test_rooted_code_round_trip(w):
    Y = from_word(w)
    code = rooted_code(Y, Y.vertices[0])
    assert are_isomorphic(surface_from_code(code), Y)


@pytest.mark.parametrize("seed", range(3))
def test_morphism_rigidity(seed):
    Z = random_cover(3, seed)
    Y = from_word("aBc")
    found = morphisms(Y, Z)
    # a morphism of a connected surface is fixed by the image of one vertex
    assert len(found) <= len(Z.vertices)
    images = [phi[Y.vertices[0]] for phi in found]
    assert len(images) == len(set(images))
    for phi in found:
        assert morphism_from(Y, Z, Y.vertices[0], phi[Y.vertices[0]]) == phi
    assert all(len(set(phi.values())) == len(phi) for phi in embeddings(Y, Z))


def test_json_round_trip():
    Z = degree_two_cover()
    assert TiledSurface.from_json(Z.to_json()) == Z


@given(words)
def test_boundary_reduced_iff_zero_adapted(w):
    Y = from_word(w)
    assert is_boundary_reduced(Y) == (find_bad_piece(Y, 0) is None)


@pytest.mark.parametrize("seed", range(3))
def test_boundary_reduced_iff_zero_adapted_on_subsurfaces(seed):
    for Y in connected_subsurfaces(random_cover(2, seed)):
        assert is_boundary_reduced(Y) == (find_bad_piece(Y, 0) is None)


def test_adaptedness_examples():
    assert is_eps_adapted(single_vertex())
    assert is_eps_adapted(from_word("abc"))
    assert not is_eps_adapted(from_word("abAB"))
    half = TiledSurface(degree_two_cover().vertices, degree_two_cover().edges, frozenset({0}))
    assert not is_eps_adapted(half)


def test_long_block_classification():
    # four consecutive octagon edges make a half block, five a long block
    info = classify_boundary(from_word("abAB"))
    assert [c.blocks[c.half_blocks[0]].length for c in info if c.half_blocks] == [4]
    assert not any(c.long_blocks for c in info)
    longer = classify_boundary(from_word("abABc"))
    assert any(c.long_blocks for c in longer)
    assert not is_boundary_reduced(from_word("abABc"))


def test_quotients_of_cycles():
    assert len(quotients_of_cycle(from_word("a"))) == 1
    assert len(quotients_of_cycle(from_word("aa"))) == 2
    # abAB: seven fold-closed partitions up to isomorphism of the image
    assert len(quotients_of_cycle(from_word("abAB"))) == 7
    weights = dict((canonical_form(H), m) for H, m in quotient_multiplicities(from_word("aa")))
    assert sum(weights.values()) == 2


def test_subsurfaces_of_degree_one_cover():
    Z = cover_from_permutations({f: (0,) for f in "abcd"})
    subs = connected_subsurfaces(Z)
    # vertex, 15 nonempty edge sets, and the closed surface
    assert len(subs) == 17
