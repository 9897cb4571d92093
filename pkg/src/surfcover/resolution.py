"""Resolutions of word cycles, materialized from explicit covers.

Every morphism h of the cycle of a word into a cover Z is grown by OvB from
its image inside Z. The output W with the induced map f is recorded as an
entry keyed by the rooted code of W at the image of the base vertex, which
identifies the pair (W, f) up to automorphisms of W.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .expectation import (
    HomEnsemble,
    conjugation_orbits,
    enumerate_homs,
    expected_embeddings,
    rooted_morphism_images,
    _injective_mask,
)
from .growth import DEFAULT_EPS, MAX_EPS, GrowthError, GrowthTrace, ovb, ovb_contract_violations
from .tiled_surface import (
    TiledSurface,
    cover_from_permutations,
    from_word,
    image_surface,
    is_boundary_reduced,
    is_eps_adapted,
    morphism_from,
    rooted_code,
    surface_from_code,
)
from .words import LETTERS, cyclic_reduce, parse_word

EPS_ADAPTED = "eps-adapted"
BR_WITH_THETA = "br-theta-positive"


@dataclass(frozen=True)
class ResolutionEntry:
    code: tuple  # rooted code of W at f(base vertex)
    classification: str
    vertices: int
    edges: int
    octagons: int
    boundary_length: int
    euler_characteristic: int

    @property
    def surface(self) -> TiledSurface:
        """W relabeled by its code; vertex 0 is the image of the base vertex."""
        return surface_from_code(self.code)

    def as_dict(self) -> dict:
        return {
            "code": code_string(self.code),
            "classification": self.classification,
            "v": self.vertices,
            "e": self.edges,
            "f": self.octagons,
            "d": self.boundary_length,
            "chi": self.euler_characteristic,
        }


def code_string(code: tuple) -> str:
    rows, octs = code
    body = ";".join(",".join(str(x) for x in row) for row in rows)
    return f"{body}|{','.join(str(b) for b in octs)}"


def classify(W: TiledSurface, eps) -> str:
    if is_eps_adapted(W, eps):
        return EPS_ADAPTED
    s = W.stats()
    if is_boundary_reduced(W) and s.octagons > s.boundary_length:
        return BR_WITH_THETA
    raise GrowthError("OvB output is neither eps-adapted nor boundary reduced with f > d")


_CLASS_CACHE: dict = {}


def make_entry(W: TiledSurface, base_image: int, eps) -> ResolutionEntry:
    s = W.stats()
    code = rooted_code(W, base_image)
    key = (code, Fraction(eps))
    if key not in _CLASS_CACHE:
        _CLASS_CACHE[key] = classify(W, eps)
    return ResolutionEntry(
        code,
        _CLASS_CACHE[key],
        s.vertices,
        s.edges,
        s.octagons,
        s.boundary_length,
        s.euler_characteristic,
    )


def word_cycle(word: str) -> TiledSurface:
    w = cyclic_reduce(parse_word(word))
    if not w:
        raise ValueError("the cycle of the trivial word is not defined")
    return from_word(w)


@dataclass(frozen=True)
class Factorization:
    base_image: int  # h(base vertex) in Z
    entry: ResolutionEntry
    surface_in_cover: TiledSurface  # W as a subsurface of Z
    image: TiledSurface  # image of h, the OvB input
    trace: GrowthTrace
    contract_violations: tuple[str, ...] = ()


def resolve_in_cover(word: str, Z: TiledSurface, eps=DEFAULT_EPS) -> list[Factorization]:
    """Factor every morphism of the word cycle into Z through its OvB output."""
    if Fraction(eps) > MAX_EPS:
        raise GrowthError(f"eps = {eps} exceeds 1/16")
    C = word_cycle(word)
    root = C.vertices[0]
    out = []
    for z in Z.vertices:
        h = morphism_from(C, Z, root, z)
        if h is None:
            continue
        U = image_surface(h, C)
        W, trace = ovb(U, Z, eps)
        # h must factor through W: same map, now into the subsurface
        if morphism_from(C, W, root, z) != h:
            raise AssertionError("morphism does not factor through its OvB output")
        bad = tuple(ovb_contract_violations(U, W, trace, eps))
        out.append(Factorization(z, make_entry(W, z, eps), W, U, trace, bad))
    return out


def cover_surface(tup: np.ndarray) -> TiledSurface:
    return cover_from_permutations({f: tuple(int(x) for x in tup[k]) for k, f in enumerate(LETTERS)})


@lru_cache(maxsize=8)
def orbit_covers(n: int) -> tuple[TiledSurface, ...]:
    reps, _ = orbit_representatives(n)
    return tuple(cover_surface(t) for t in reps)


def _resolve_orbit(args) -> tuple[list[ResolutionEntry], list[str]]:
    word, n, index, eps = args
    facs = resolve_in_cover(word, orbit_covers(n)[index], eps)
    return [f.entry for f in facs], [v for f in facs for v in f.contract_violations]


@dataclass
class ResolutionTable:
    word: str
    eps: Fraction
    entries: dict = field(default_factory=dict)  # code -> entry
    counts: Counter = field(default_factory=Counter)  # code -> weighted hits per n
    covers_examined: Counter = field(default_factory=Counter)  # n -> tuples covered
    ovb_runs: int = 0
    contract_violations: list = field(default_factory=list)

    def add(self, entry: ResolutionEntry, weight: int = 1) -> None:
        self.entries.setdefault(entry.code, entry)
        self.counts[entry.code] += weight

    def sorted_entries(self) -> list[ResolutionEntry]:
        return [self.entries[k] for k in sorted(self.entries, key=lambda c: (len(c[0]), c))]

    def as_dict(self) -> dict:
        return {
            "word": self.word,
            "eps": f"{self.eps.numerator}/{self.eps.denominator}",
            "covers": {str(n): c for n, c in sorted(self.covers_examined.items())},
            "ovb_runs": self.ovb_runs,
            "contract_violations": len(self.contract_violations),
            "entries": [e.as_dict() for e in self.sorted_entries()],
        }


@lru_cache(maxsize=8)
def orbit_representatives(n: int) -> tuple[np.ndarray, np.ndarray]:
    return conjugation_orbits(enumerate_homs(n))


def aggregate_resolution(word: str, ns, eps=DEFAULT_EPS, jobs: int = 1) -> ResolutionTable:
    """Union of entries over all covers of the given degrees.

    OvB commutes with relabeling the cover, so one tuple per conjugation
    orbit suffices; hits are weighted by orbit size.
    """
    eps = Fraction(eps)
    table = ResolutionTable(word, eps)
    for n in ns:
        reps, sizes = orbit_representatives(n)
        args = [(word, n, i, eps) for i in range(len(reps))]
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                results = list(pool.map(_resolve_orbit, args, chunksize=64))
        else:
            results = [_resolve_orbit(a) for a in args]
        for (found, bad), size in zip(results, sizes):
            for entry in found:
                table.add(entry, int(size))
            table.ovb_runs += len(found)
            table.contract_violations.extend(bad)
        table.covers_examined[n] += int(sizes.sum())
    return table


# --- identity checks -------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    word: str
    n: int
    covers: int
    morphisms: int
    factorizations: int
    violations: int  # (cover, base image) pairs not hit exactly once, or hit without a morphism
    route: str = "all-tuples"

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.morphisms == self.factorizations


def factorization_hits(table: ResolutionTable, tuples: np.ndarray) -> np.ndarray:
    """hits[t, z]: number of (entry, embedding) pairs whose composite sends the base vertex to z."""
    N, _, n = tuples.shape
    hits = np.zeros((N, n), dtype=np.int64)
    rows = np.arange(N)[:, None]
    for entry in table.entries.values():
        W = entry.surface
        if len(W.vertices) > n:
            continue
        # vertex 0 of W is the image of the base vertex and the root of the images
        img, ok = rooted_morphism_images(W, tuples)
        emb = _injective_mask(img, ok)
        np.add.at(hits, (np.broadcast_to(rows, emb.shape)[emb], np.asarray(img[0])[emb]), 1)
    return hits


def check_identity(
    table: ResolutionTable, n: int, ensemble: HomEnsemble | None = None, orbits: bool = False
) -> IdentityReport:
    """Unique factorization of every morphism of the word cycle, on every cover of degree n.

    With orbits=True only one tuple per conjugation orbit is examined and
    counts are weighted by orbit size; relabeling a cover carries morphisms
    and embeddings along, so the outcome is the same.
    """
    C = word_cycle(table.word)
    if orbits:
        tuples, weights = orbit_representatives(n)
        route = "orbit-representatives"
    else:
        tuples = (ensemble or enumerate_homs(n)).tuples
        weights = np.ones(len(tuples), dtype=np.int64)
        route = "all-tuples"
    _, morph = rooted_morphism_images(C, tuples)
    hits = factorization_hits(table, tuples)
    bad = ((hits != 1) & morph) | ((hits != 0) & ~morph)
    w = weights[:, None]
    return IdentityReport(
        table.word,
        n,
        int(weights.sum()),
        int((morph * w).sum()),
        int((hits * w).sum()),
        int((bad * w).sum()),
        route,
    )


def expectation_identity(table: ResolutionTable, n: int) -> tuple[Fraction, Fraction]:
    """(sum of expected embeddings over entries, expected morphisms of the word cycle)."""
    from .expectation import expected_morphisms

    lhs = sum((expected_embeddings(e.surface, n) for e in table.entries.values()), Fraction(0))
    return lhs, expected_morphisms(word_cycle(table.word), n)


def entry_invariant_violations(table: ResolutionTable) -> list[str]:
    """Size and Euler characteristic bounds on every entry.

    The word length is the free cyclic length, an upper bound for the
    shortest representative of the conjugacy class in the surface group.
    """
    length = len(cyclic_reduce(parse_word(table.word)))
    found = []
    for e in table.sorted_entries():
        tag = code_string(e.code)
        if e.boundary_length > 6 * length:
            found.append(f"{tag}: boundary {e.boundary_length} exceeds {6 * length}")
        if e.octagons > 8 * length + 4 * length * length:
            found.append(f"{tag}: {e.octagons} octagons exceed the bound")
        if e.euler_characteristic > 0:
            found.append(f"{tag}: positive Euler characteristic")
        if e.classification != EPS_ADAPTED and not (
            e.euler_characteristic < -e.octagons < -e.boundary_length
        ):
            found.append(f"{tag}: chi < -f < -d fails for a non-adapted entry")
    return found
