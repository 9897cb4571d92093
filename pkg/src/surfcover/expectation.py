"""Exact expectations over all homomorphisms from the genus-2 surface group to S_n.

A cover tuple is (alpha_a, alpha_b, alpha_c, alpha_d) with the relator
path closed at every point: d^-1 c^-1 d c b^-1 a^-1 b a = id as functions.
The ensemble of all such tuples is stored as an int8 array of shape (N, 4, n).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .partition_algebra import mednykh_count, pochhammer
from .tiled_surface import SLOT_IS_OUT, SLOT_LETTER, TiledSurface, from_word
from .words import LETTERS, cyclic_reduce, parse_word

MAX_ENUMERATION_N = 5


class EnumerationLimitError(RuntimeError):
    """Raised when exhaustive enumeration is requested beyond the supported degree."""


@dataclass(frozen=True)
class CoverTuple:
    n: int
    perms: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def as_dict(self) -> dict:
        return dict(zip(LETTERS, self.perms))


@dataclass(frozen=True)
class HomEnsemble:
    n: int
    tuples: np.ndarray  # (N, 4, n) int8
    route: str

    def __len__(self) -> int:
        return int(self.tuples.shape[0])

    def cover(self, i: int) -> CoverTuple:
        return CoverTuple(self.n, tuple(tuple(int(x) for x in row) for row in self.tuples[i]))


def all_perm_array(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)


def apply(p: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Row-wise p[x] for arrays of permutations and points."""
    return np.take_along_axis(p, x.astype(np.int64), axis=-1)


def invert(p: np.ndarray) -> np.ndarray:
    return np.argsort(p, axis=-1).astype(np.int8)


def perm_keys(p: np.ndarray) -> np.ndarray:
    n = p.shape[-1]
    weights = n ** np.arange(n, dtype=np.int64)
    return (p.astype(np.int64) * weights).sum(axis=-1)


def _commutator_half(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """y^-1 x^-1 y x as functions."""
    return apply(invert(y), apply(invert(x), apply(y, x)))


def enumerate_homs(n: int) -> HomEnsemble:
    """All cover tuples, matched through buckets keyed by half-relator values."""
    if n > MAX_ENUMERATION_N or n < 0:
        raise EnumerationLimitError(f"exhaustive enumeration supports 0 <= n <= {MAX_ENUMERATION_N}")
    return _enumerate_homs_cached(n)


@lru_cache(maxsize=None)
def _enumerate_homs_cached(n: int) -> HomEnsemble:
    perms = all_perm_array(n)
    m = len(perms)
    ia, ib = np.divmod(np.arange(m * m), m)
    x, y = perms[ia], perms[ib]
    # the relator closes iff b^-1 a^-1 b a = c^-1 d^-1 c d
    left = perm_keys(_commutator_half(x, y))
    right = perm_keys(_commutator_half(y, x))
    order_l = np.argsort(left, kind="stable")
    order_r = np.argsort(right, kind="stable")
    keys_l, start_l, count_l = np.unique(left[order_l], return_index=True, return_counts=True)
    keys_r, start_r, count_r = np.unique(right[order_r], return_index=True, return_counts=True)
    pos_r = {int(k): (int(s), int(c)) for k, s, c in zip(keys_r, start_r, count_r)}
    total = sum(int(c) * pos_r.get(int(k), (0, 0))[1] for k, c in zip(keys_l, count_l))
    out = np.empty((total, 4, n), dtype=np.int8)
    row = 0
    for k, s, c in zip(keys_l, start_l, count_l):
        if int(k) not in pos_r:
            continue
        sr, cr = pos_r[int(k)]
        ab = order_l[s : s + c]
        cd = order_r[sr : sr + cr]
        gi, gj = np.meshgrid(ab, cd, indexing="ij")
        gi, gj = gi.ravel(), gj.ravel()
        block = slice(row, row + len(gi))
        out[block, 0] = x[gi]
        out[block, 1] = y[gi]
        out[block, 2] = x[gj]
        out[block, 3] = y[gj]
        row += len(gi)
    return HomEnsemble(n, out, "buckets")


def enumerate_homs_full(n: int) -> HomEnsemble:
    """All cover tuples by testing every quadruple; independent cross-check for n <= 4."""
    if n > 4:
        raise EnumerationLimitError("full quadruple enumeration supports n <= 4")
    perms = all_perm_array(n)
    m = len(perms)
    idx = np.array(list(itertools.product(range(m), repeat=4)), dtype=np.int64).reshape(-1, 4)
    a, b, c, d = (perms[idx[:, k]] for k in range(4))
    ident = np.broadcast_to(np.arange(n, dtype=np.int8), a.shape)
    cur = ident
    for p in (a, b, invert(a), invert(b), c, d, invert(c), invert(d)):
        cur = apply(p, cur)
    ok = np.all(cur == ident, axis=1)
    tuples = np.stack([a[ok], b[ok], c[ok], d[ok]], axis=1).astype(np.int8)
    order = np.lexsort(tuple(tuples.reshape(len(tuples), -1)[:, ::-1].T))
    return HomEnsemble(n, tuples[order], "full")


def sorted_tuples(ens: HomEnsemble) -> np.ndarray:
    flat = ens.tuples.reshape(len(ens), -1)
    order = np.lexsort(tuple(flat[:, ::-1].T))
    return flat[order]


# --- word evaluation -----------------------------------------------------


def _letter_arrays(tuples: np.ndarray) -> dict[str, np.ndarray]:
    arrays = {}
    for k, f in enumerate(LETTERS):
        p = tuples[:, k, :]
        arrays[f] = p
        arrays[f.upper()] = invert(p)
    return arrays


def fixed_point_counts(word: str, tuples: np.ndarray) -> np.ndarray:
    """fix of the word's image for every tuple, following the path letter by letter."""
    n = tuples.shape[2]
    arrays = _letter_arrays(tuples)
    start = np.broadcast_to(np.arange(n, dtype=np.int8), (tuples.shape[0], n))
    cur = start
    for x in word:
        cur = apply(arrays[x], cur)
    return (cur == start).sum(axis=1)


def expected_fix(word: str, n: int, ensemble: HomEnsemble | None = None) -> Fraction:
    word = parse_word(word)
    ens = ensemble or enumerate_homs(n)
    if not cyclic_reduce(word):
        warnings.warn("trivial word: every point is fixed", stacklevel=2)
        return Fraction(n)
    total = int(fixed_point_counts(word, ens.tuples).sum())
    return Fraction(total, len(ens))


# --- morphism counts -----------------------------------------------------


def _bfs_plan(Y: TiledSurface, root: int):
    """Tree steps (parent, slot, child) and the remaining edges as (src, letter, dst)."""
    order = [root]
    seen = {root}
    steps = []
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for s, w in enumerate(Y.slots(v)):
            if w is not None and w not in seen:
                seen.add(w)
                order.append(w)
                steps.append((v, s, w))
    tree = {(SLOT_LETTER[s], v, w) if SLOT_IS_OUT[s] else (SLOT_LETTER[s], w, v) for v, s, w in steps}
    extra = [e for e in Y.edges if e not in tree]
    return order, steps, extra


def rooted_morphism_images(Y: TiledSurface, tuples: np.ndarray) -> tuple[dict, np.ndarray]:
    """Images of every vertex of connected Y for every tuple and every root image.

    Returns (vertex -> int array (N, n)) and a validity mask (N, n).
    """
    N, _, n = tuples.shape
    arrays = _letter_arrays(tuples)
    root = Y.vertices[0]
    order, steps, extra = _bfs_plan(Y, root)
    if len(order) != len(Y.vertices):
        raise ValueError("morphism counts need a connected surface")
    img = {root: np.broadcast_to(np.arange(n, dtype=np.int8), (N, n))}
    for v, s, w in steps:
        key = SLOT_LETTER[s] if SLOT_IS_OUT[s] else SLOT_LETTER[s].upper()
        img[w] = apply(arrays[key], img[v])
    ok = np.ones((N, n), dtype=bool)
    for f, s, t in extra:
        ok &= apply(arrays[f], img[s]) == img[t]
    return img, ok


def _injective_mask(img: dict, ok: np.ndarray) -> np.ndarray:
    verts = list(img)
    mask = ok.copy()
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            mask &= img[verts[i]] != img[verts[j]]
    return mask


def morphism_counts(Y: TiledSurface, tuples: np.ndarray) -> np.ndarray:
    if not Y.vertices:
        return np.ones(tuples.shape[0], dtype=np.int64)
    _, ok = rooted_morphism_images(Y, tuples)
    return ok.sum(axis=1)


def embedding_counts(Y: TiledSurface, tuples: np.ndarray) -> np.ndarray:
    """Embeddings of Y into each cover, summed over connected components' injective joint images."""
    if not Y.vertices:
        return np.ones(tuples.shape[0], dtype=np.int64)
    comps = Y.components()
    if len(comps) == 1:
        img, ok = rooted_morphism_images(Y, tuples)
        return _injective_mask(img, ok).sum(axis=1)
    # disconnected: combine per-component images and require global injectivity
    N, _, n = tuples.shape
    parts = []
    for comp in comps:
        sub = Y.sub(comp)
        img, ok = rooted_morphism_images(sub, tuples)
        parts.append((img, ok))
    total = np.zeros(N, dtype=np.int64)
    for roots in itertools.product(range(n), repeat=len(parts)):
        mask = np.ones(N, dtype=bool)
        images = []
        for (img, ok), r in zip(parts, roots):
            mask &= ok[:, r]
            images.extend(arr[:, r] for arr in img.values())
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                mask &= images[i] != images[j]
        total += mask
    return total


def expected_morphisms(Y: TiledSurface, n: int, ensemble: HomEnsemble | None = None) -> Fraction:
    ens = ensemble or enumerate_homs(n)
    return Fraction(int(morphism_counts(Y, ens.tuples).sum()), len(ens))


def expected_embeddings(Y: TiledSurface, n: int, ensemble: HomEnsemble | None = None) -> Fraction:
    if len(Y.vertices) > n:
        return Fraction(0)
    ens = ensemble or enumerate_homs(n)
    return Fraction(int(embedding_counts(Y, ens.tuples).sum()), len(ens))


def en_emb_formula(Y: TiledSurface, n: int) -> float:
    """Expected embeddings from the representation-theoretic sum."""
    from .sym_rep import xi_n

    v = len(Y.vertices)
    if n < v:
        raise ValueError(f"n = {n} is smaller than the number of vertices {v}")
    f = len(Y.octagons)
    prefactor = Fraction(math.factorial(n) ** 3, mednykh_count(n))
    prefactor *= pochhammer(n, v) * pochhammer(n, f)
    for ef in Y.edges_by_letter():
        prefactor /= pochhammer(n, ef)
    return float(prefactor) * xi_n(Y, n)


# --- conjugation orbits --------------------------------------------------


def conjugation_orbits(ens: HomEnsemble) -> tuple[np.ndarray, np.ndarray]:
    """One representative per simultaneous-conjugation orbit, with orbit sizes.

    The representative minimizes the flattened tuple lexicographically.
    """
    n = ens.n
    tuples = ens.tuples
    N = len(ens)
    perms = all_perm_array(n)
    best = None
    for g in perms:
        ginv = np.argsort(g).astype(np.int8)
        # g alpha g^-1
        conj = g[tuples[:, :, ginv]]
        flat = conj.reshape(N, -1)
        if best is None:
            best = flat.copy()
            continue
        # lexicographic minimum row by row
        diff = flat != best
        first = diff.argmax(axis=1)
        any_diff = diff.any(axis=1)
        rows = np.arange(N)
        smaller = any_diff & (flat[rows, first] < best[rows, first])
        best[smaller] = flat[smaller]
    uniq, counts = np.unique(best, axis=0, return_counts=True)
    return uniq.reshape(-1, 4, n), counts


# --- divisors and powers -------------------------------------------------


def divisor_count(q: int) -> int:
    if q < 1:
        raise ValueError("q must be positive")
    return sum(1 for k in range(1, q + 1) if q % k == 0)


def is_proper_power(word: str) -> tuple[bool, str, int]:
    """Free-group power detection by the rotation period of the cyclic reduction."""
    w = cyclic_reduce(parse_word(word))
    L = len(w)
    for period in range(1, L + 1):
        if L % period == 0 and w[:period] * (L // period) == w:
            return (L // period > 1, w[:period], L // period)
    return (False, w, 1)


def convergence_table(word: str, ns) -> list[dict]:
    q = is_proper_power(word)[2]
    target = divisor_count(q)
    rows = []
    for n in ns:
        e = expected_fix(word, n)
        rows.append({"n": n, "expectation": e, "target": target, "error": abs(e - target)})
    return rows
