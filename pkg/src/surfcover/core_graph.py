"""Core graphs: the folded graph with a relator cycle at every vertex and its quotients.

The count of 4-tuples extending the 1-skeleton of Y, whose relator path closes
at every vertex of Y, is a sum over quotients H of that graph of
(n)_{v(H)} / prod_f (n)_{e_f(H)}, up to the factor (n!)^4 / (n)_{v(Y)}.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .expectation import all_perm_array, apply, invert
from .partition_algebra import (
    character,
    class_size,
    enumerate_partitions,
    falling,
    hook_dim,
)
from .tiled_surface import TiledSurface, fold_edges, single_vertex
from .words import LETTERS, RELATOR

DEFAULT_QUOTIENT_CAP = 24


class QuotientLimitError(RuntimeError):
    """Raised when a graph is too large for quotient enumeration."""


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[str, int, int], ...]
    marked: frozenset[int] = frozenset()

    def edges_by_letter(self) -> tuple[int, int, int, int]:
        return tuple(sum(1 for g, _, _ in self.edges if g == f) for f in LETTERS)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def is_folded(self) -> bool:
        out = {(f, s) for f, s, _ in self.edges}
        inc = {(f, t) for f, _, t in self.edges}
        return len(out) == len(self.edges) == len(inc)

    def as_surface(self) -> TiledSurface:
        return TiledSurface(self.vertices, self.edges)


def hat_graph(Y: TiledSurface) -> LabeledGraph:
    """Attach a relator cycle at every vertex of the 1-skeleton and fold."""
    edges = list(Y.edges)
    nxt = max(Y.vertices, default=-1) + 1
    for v in Y.vertices:
        path = [v] + list(range(nxt, nxt + 7)) + [v]
        nxt += 7
        for p, x in enumerate(RELATOR):
            u, w = path[p], path[p + 1]
            f = x.lower()
            edges.append((f, u, w) if x == f else (f, w, u))
    verts = set(Y.vertices) | {x for _, s, t in edges for x in (s, t)}
    rep, folded = fold_edges(verts, edges)
    if len({rep[v] for v in Y.vertices}) != len(Y.vertices):
        raise AssertionError("folding identified two vertices of the surface")
    # relabel: surface vertices keep their ids, new vertices follow
    new_ids = {}
    for v in Y.vertices:
        new_ids[rep[v]] = v
    extra = sorted(set(rep.values()) - set(new_ids))
    start = max(Y.vertices, default=-1) + 1
    for k, r in enumerate(extra):
        new_ids[r] = start + k
    return LabeledGraph(
        tuple(sorted(new_ids.values())),
        tuple(sorted((f, new_ids[s], new_ids[t]) for f, s, t in folded)),
        frozenset(Y.vertices),
    )


def _bfs_order(graph: LabeledGraph) -> list[int]:
    adj: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for _, s, t in graph.edges:
        adj[s].append(t)
        adj[t].append(s)
    order = sorted(graph.marked)
    seen = set(order)
    k = 0
    while k < len(order):
        for w in sorted(adj[order[k]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        k += 1
    order.extend(v for v in graph.vertices if v not in seen)
    return order


class _Partition:
    """Union-find over vertex indices that keeps the merged graph folded."""

    __slots__ = ("parent", "out", "inc")

    def __init__(self, size: int, edges):
        self.parent = list(range(size))
        self.out: list[dict] = [{} for _ in range(size)]
        self.inc: list[dict] = [{} for _ in range(size)]
        for f, s, t in edges:
            self.out[s][f] = t
            self.inc[t][f] = s

    def copy(self) -> "_Partition":
        other = _Partition.__new__(_Partition)
        other.parent = self.parent[:]
        other.out = self.out[:]
        other.inc = self.inc[:]
        return other

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union_and_fold(self, x: int, y: int) -> None:
        pending = [(x, y)]
        while pending:
            a, b = pending.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra
            for maps in (self.out, self.inc):
                merged = dict(maps[ra])
                for f, w in maps[rb].items():
                    if f in merged:
                        pending.append((merged[f], w))
                    else:
                        merged[f] = w
                maps[ra] = merged


def _search_partitions(graph: LabeledGraph, cap: int):
    """Yield fold-closed partitions (as union-find states) injective on marked vertices."""
    if len(graph.vertices) > cap:
        raise QuotientLimitError(f"{len(graph.vertices)} vertices exceeds the quotient cap {cap}")
    index = {v: k for k, v in enumerate(graph.vertices)}
    edges = [(f, index[s], index[t]) for f, s, t in graph.edges]
    order = [index[v] for v in _bfs_order(graph)]
    marked = {index[v] for v in graph.marked}

    def rec(i: int, part: _Partition, classes: list[int]):
        # `classes` holds pairwise distinct roots of processed vertices
        if i == len(order):
            yield part
            return
        v = order[i]
        rv = part.find(v)
        if any(part.find(c) == rv for c in classes):
            yield from rec(i + 1, part, classes)
            return
        yield from rec(i + 1, part, classes + [rv])
        if v in marked:
            return
        for c in classes:
            trial = part.copy()
            trial.union_and_fold(v, c)
            roots = [trial.find(x) for x in classes]
            if len(set(roots)) == len(roots):
                yield from rec(i + 1, trial, roots)

    yield from rec(0, _Partition(len(graph.vertices), edges), [])
    return


def enumerate_quotients(graph: LabeledGraph, cap: int = DEFAULT_QUOTIENT_CAP) -> list[LabeledGraph]:
    """Folded quotients of the graph that are injective on the marked vertices."""
    results = []
    base = max(graph.vertices, default=-1) + 1
    for part in _search_partitions(graph, cap):
        reps = [part.find(k) for k in range(len(graph.vertices))]
        ids = {reps[k]: v for k, v in enumerate(graph.vertices) if v in graph.marked}
        for r in sorted(set(reps) - set(ids)):
            ids[r] = base + len(ids) - len(graph.marked)
        label = {v: ids[reps[k]] for k, v in enumerate(graph.vertices)}
        edges = tuple(sorted({(f, label[s], label[t]) for f, s, t in graph.edges}))
        results.append(LabeledGraph(tuple(sorted(ids.values())), edges, graph.marked))
    return results


def quotient_term_counts(graph: LabeledGraph, cap: int = DEFAULT_QUOTIENT_CAP) -> Counter:
    """Multiset of (vertex count, edge counts per letter) over the quotients."""
    counts: Counter = Counter()
    for part in _search_partitions(graph, cap):
        roots = [k for k in range(len(part.parent)) if part.parent[k] == k]
        edges = tuple(sum(1 for r in roots if f in part.out[r]) for f in LETTERS)
        counts[(len(roots), edges)] += 1
    return counts


def enumerate_Q(Y: TiledSurface, cap: int = DEFAULT_QUOTIENT_CAP) -> list[LabeledGraph]:
    return enumerate_quotients(hat_graph(Y), cap)


@dataclass(frozen=True)
class QuotientTerm:
    vertices: int
    edges_by_letter: tuple[int, int, int, int]
    euler_characteristic: int
    multiplicity: int = 1

    def value(self, n: int) -> Fraction:
        num = falling(n, self.vertices)
        if num == 0:
            return Fraction(0)
        den = 1
        for e in self.edges_by_letter:
            den *= falling(n, e)
        return Fraction(self.multiplicity * num, den)


@dataclass(frozen=True)
class RationalCountFormula:
    terms: tuple[QuotientTerm, ...]
    surface_vertices: int
    surface_edges_by_letter: tuple[int, int, int, int]
    surface_octagons: int

    def quotient_sum(self, n: int) -> Fraction:
        return sum((t.value(n) for t in self.terms), Fraction(0))

    def evaluate(self, n: int) -> Fraction:
        """Number of tuples extending the 1-skeleton with the relator closed at every surface vertex."""
        if n < self.surface_vertices:
            raise ValueError("n is smaller than the number of vertices")
        return Fraction(math.factorial(n) ** 4, falling(n, self.surface_vertices)) * self.quotient_sum(n)

    @property
    def num_quotients(self) -> int:
        return sum(t.multiplicity for t in self.terms)

    def leading_terms(self) -> list[QuotientTerm]:
        """Terms with the largest Euler characteristic."""
        top = max(t.euler_characteristic for t in self.terms)
        return [t for t in self.terms if t.euler_characteristic == top]


def xstar_rational(Y: TiledSurface, cap: int = DEFAULT_QUOTIENT_CAP) -> RationalCountFormula:
    counts = quotient_term_counts(hat_graph(Y), cap)
    terms = tuple(
        QuotientTerm(v, e, v - sum(e), multiplicity)
        for (v, e), multiplicity in sorted(counts.items())
    )
    return RationalCountFormula(terms, len(Y.vertices), Y.edges_by_letter(), len(Y.octagons))


def xi_nu_top(Y: TiledSurface, n: int, formula: RationalCountFormula | None = None) -> Fraction:
    formula = formula or xstar_rational(Y)
    factor = Fraction(1, falling(n, len(Y.octagons)))
    for e in Y.edges_by_letter():
        factor *= falling(n, e)
    return factor * formula.quotient_sum(n)


# --- oracles ------------------------------------------------------------


def xstar_count_bruteforce(Y: TiledSurface, n: int, max_n: int = 6) -> int:
    """Count tuples extending the 1-skeleton whose relator path closes at every surface point.

    Surface vertices are the top points. Pairs (a, b) and (c, d) are matched on
    the restriction of b^-1 a^-1 b a and c^-1 d^-1 c d to those points.
    """
    if n > max_n:
        raise RuntimeError(f"brute force supports n <= {max_n}")
    v = len(Y.vertices)
    if n < v:
        raise ValueError("n is smaller than the number of vertices")
    point = {u: i + n - v for i, u in enumerate(Y.vertices)}
    perms = all_perm_array(n)
    allowed = {}
    for k, f in enumerate(LETTERS):
        mask = np.ones(len(perms), dtype=bool)
        for g, s, t in Y.edges:
            if g == f:
                mask &= perms[:, point[s]] == point[t]
        allowed[f] = perms[mask]
    top = list(range(n - v, n))

    def keys(x: np.ndarray, y: np.ndarray, swap: bool) -> np.ndarray:
        i, j = np.divmod(np.arange(len(x) * len(y)), len(y))
        p, q = x[i], y[j]
        if swap:
            # c^-1 d^-1 c d
            val = apply(invert(p), apply(invert(q), apply(p, q)))
        else:
            # b^-1 a^-1 b a
            val = apply(invert(q), apply(invert(p), apply(q, p)))
        if not top:
            return np.zeros(len(val), dtype=np.int64)
        weights = n ** np.arange(len(top), dtype=np.int64)
        return (val[:, top].astype(np.int64) * weights).sum(axis=-1)

    left = keys(allowed["a"], allowed["b"], False)
    right = keys(allowed["c"], allowed["d"], True)
    lk, lc = np.unique(left, return_counts=True)
    rk, rc = np.unique(right, return_counts=True)
    common, li, ri = np.intersect1d(lk, rk, return_indices=True)
    return int(sum(int(lc[a]) * int(rc[b]) for a, b in zip(li, ri)))


def xstar_frobenius(num_vertices: int, n: int) -> int:
    """Count for a surface of isolated vertices from characters: tuples whose relator value fixes the top points."""
    k = num_vertices
    if n < k:
        raise ValueError("n is smaller than the number of vertices")
    total = Fraction(0)
    for lam in enumerate_partitions(n):
        d = hook_dim(lam)
        inner = 0
        for rho in enumerate_partitions(n - k):
            inner += class_size(rho) * character(lam, tuple(rho) + (1,) * k)
        total += Fraction(inner, d**3)
    value = Fraction(math.factorial(n)) ** 3 * total
    if value.denominator != 1:
        raise ArithmeticError("non-integral character count")
    return int(value)


def vertex_only_surface(k: int) -> TiledSurface:
    return TiledSurface(tuple(range(k)), ())
