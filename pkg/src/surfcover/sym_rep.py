"""Orthogonal matrix models of symmetric-group representations and the sums built on them.

Matrices are in the Gelfand-Tsetlin basis indexed by standard tableaux sorted
by row-reading word. Column T of ``skew_matrix(shape, g)`` is the image of the
basis vector of T, so entry [S, T] is the coefficient <g w_T, w_S>.
Points and tableau entries are 0-based; a tiled surface with v vertices has
its vertices identified with the top points n-v, ..., n-1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .partition_algebra import (
    Partition,
    SkewShape,
    character,
    enumerate_partitions,
    grow,
    hook_dim,
    join_tableaux,
    shrink,
    skew_dim,
    skew_tableaux,
    tableau_positions,
    top_row,
)
from .perms import Perm, adjacent_word, compose, cycle_type, identity, inverse
from .tiled_surface import TiledSurface
from .words import LETTERS, RELATOR

DEFAULT_DIM_CAP = 200


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds a configured size cap."""


class InterchangeError(RuntimeError):
    """Raised when an interchange family cannot be built or fails its checks."""


# --- matrices ------------------------------------------------------------


@lru_cache(maxsize=None)
def _tableau_index(shape: SkewShape) -> dict:
    return {t: i for i, t in enumerate(skew_tableaux(shape))}


@lru_cache(maxsize=None)
def transposition_matrix(shape: SkewShape, k: int) -> np.ndarray:
    """Matrix of the transposition of entries k and k+1 (Young's orthogonal form)."""
    tabs = skew_tableaux(shape)
    index = _tableau_index(shape)
    dim = len(tabs)
    mat = np.zeros((dim, dim))
    for col, t in enumerate(tabs):
        pos = tableau_positions(shape, t)
        (r1, c1), (r2, c2) = pos[k], pos[k + 1]
        axial = (c2 - r2) - (c1 - r1)
        mat[col, col] = 1.0 / axial
        if abs(axial) > 1:
            swapped = tuple(
                tuple(k + 1 if x == k else k if x == k + 1 else x for x in row) for row in t
            )
            mat[index[swapped], col] = math.sqrt(1.0 - 1.0 / axial**2)
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True)
class RepMatrix:
    shape: SkewShape
    element: Perm
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def _local_window(shape: SkewShape, g: Sequence[int]) -> list[int]:
    lo, hi = shape.offset, shape.offset + shape.size
    for i, x in enumerate(g):
        inside = lo <= i < hi
        if inside != (lo <= x < hi) or (not inside and x != i):
            raise ValueError(
                f"permutation must fix every point outside [{lo}, {hi}) and preserve the window"
            )
    return [g[i] - lo for i in range(lo, hi)] if len(g) >= hi else list(range(hi - lo))


@lru_cache(maxsize=200_000)
def _skew_matrix_cached(shape: SkewShape, g: tuple) -> np.ndarray:
    local = _local_window(shape, g)
    dim = skew_dim(shape)
    mat = np.eye(dim)
    for k in adjacent_word(local):
        mat = mat @ transposition_matrix(shape, shape.offset + k)
    mat.setflags(write=False)
    return mat


def skew_matrix(shape: SkewShape, g: Sequence[int], dim_cap: int = DEFAULT_DIM_CAP) -> RepMatrix:
    """Action of g on the skew module of the shape; g may only move its entries."""
    dim = skew_dim(shape)
    if dim > dim_cap:
        raise ResourceLimitError(f"dimension {dim} exceeds cap {dim_cap}")
    g = tuple(g)
    return RepMatrix(shape, g, _skew_matrix_cached(shape, g))


def rep_matrix(lam: Partition, g: Sequence[int], dim_cap: int = DEFAULT_DIM_CAP) -> RepMatrix:
    return skew_matrix(SkewShape(tuple(lam)), g, dim_cap)


def character_value(lam: Partition, g: Sequence[int]) -> float:
    return float(np.trace(rep_matrix(lam, g).entries))


# --- interchange family --------------------------------------------------


@dataclass(frozen=True)
class InterchangeFamily:
    n: int
    num_vertices: int
    num_octagons: int
    edges_by_letter: Mapping[str, int]
    point_of: Mapping[int, int]
    sigma_plus: Mapping[str, Perm]
    sigma_minus: Mapping[str, Perm]
    tau_plus: Mapping[str, Perm]
    tau_minus: Mapping[str, Perm]
    g0: Mapping[str, Perm]
    v_plus: Mapping[str, frozenset]
    v_minus: Mapping[str, frozenset]

    def products(self) -> list[Perm]:
        """The eight permutations whose matrix coefficients make up the product."""
        sp, sm, tp, tm = self.sigma_plus, self.sigma_minus, self.tau_plus, self.tau_minus
        return [
            compose(sm["b"], inverse(sp["a"])),
            compose(tp["a"], inverse(sp["b"])),
            compose(tp["b"], inverse(tm["a"])),
            compose(sm["c"], inverse(tm["b"])),
            compose(sm["d"], inverse(sp["c"])),
            compose(tp["c"], inverse(sp["d"])),
            compose(tp["d"], inverse(tm["c"])),
            compose(sm["a"], inverse(tm["d"])),
        ]

    def violations(self) -> list[str]:
        """Failures of the four defining properties (empty when the family is valid)."""
        n, v = self.n, self.num_vertices
        out = []
        top = set(range(n - v, n))
        for f in LETTERS:
            ef = self.edges_by_letter[f]
            target = set(range(n - ef, n))
            for name, perm, dom in (
                ("sigma+", self.sigma_plus[f], self.v_plus[f]),
                ("tau+", self.tau_plus[f], self.v_plus[f]),
                ("sigma-", self.sigma_minus[f], self.v_minus[f]),
                ("tau-", self.tau_minus[f], self.v_minus[f]),
            ):
                if {perm[x] for x in dom} != target:
                    out.append(f"P1 {name}_{f}")
                if any(perm[x] != x for x in range(n) if x not in top):
                    out.append(f"support {name}_{f}")
            g0 = self.g0[f]
            if compose(inverse(self.sigma_plus[f]), self.sigma_minus[f]) != g0:
                out.append(f"P2 sigma_{f}")
            if compose(inverse(self.tau_plus[f]), self.tau_minus[f]) != g0:
                out.append(f"P2 tau_{f}")
            for sign, s, t, dom in (
                ("+", self.sigma_plus[f], self.tau_plus[f], self.v_plus[f]),
                ("-", self.sigma_minus[f], self.tau_minus[f], self.v_minus[f]),
            ):
                if any(s[x] != t[x] for x in range(n) if x not in dom):
                    out.append(f"P3 {sign}{f}")
        fixed = range(n - self.num_octagons, n)
        for i, p in enumerate(self.products()):
            if any(p[x] != x for x in fixed):
                out.append(f"P4 product {i}")
        return out


# Edges of an octagon carrying its label under sigma (first) and tau (second),
# as pairs of corner positions (source, target).
_OCTAGON_ROLES = {
    "a": ((0, 1), (3, 2)),
    "b": ((1, 2), (4, 3)),
    "c": ((4, 5), (7, 6)),
    "d": ((5, 6), (0, 7)),
}


def _complete_bijection(n: int, domain_top: Sequence[int], fixed: Mapping[int, int], free_targets: Sequence[int]) -> Perm:
    """Permutation of [n] that agrees with `fixed`, sends the rest of `domain_top`
    order-preservingly onto `free_targets` and fixes every other point."""
    image = list(range(n))
    rest = sorted(x for x in domain_top if x not in fixed)
    for x, y in fixed.items():
        image[x] = y
    for x, y in zip(rest, sorted(free_targets)):
        image[x] = y
    return tuple(image)


def construct_interchange(Y: TiledSurface, n: int) -> InterchangeFamily:
    """A family of permutations with the four properties, built octagon by octagon.

    Octagon k (in order of base vertex) gets the label n - f + k. Along each
    letter, sigma carries that label on one of the two edges of the octagon
    with that letter and tau on the other, chosen so that each of the eight
    products fixes the label. The remaining edges get the remaining top
    labels in a fixed order.
    """
    v = len(Y.vertices)
    if n < v:
        raise ValueError(f"n = {n} is smaller than the number of vertices {v}")
    point = {u: i + n - v for i, u in enumerate(Y.vertices)}
    top = list(range(n - v, n))
    f_count = len(Y.octagons)
    bases = sorted(Y.octagons)
    corners = {b: [point[u] for u in Y.relator_path(b)] for b in bases}
    sp, sm, tp, tm, g0, vp, vm, ecount = {}, {}, {}, {}, {}, {}, {}, {}
    for f in LETTERS:
        f_edges = sorted((point[s], point[t]) for g, s, t in Y.edges if g == f)
        ef = len(f_edges)
        ecount[f] = ef
        vm[f] = frozenset(s for s, _ in f_edges)
        vp[f] = frozenset(t for _, t in f_edges)
        labels = list(range(n - ef, n))
        octagon_labels = set(range(n - f_count, n))
        spare = [x for x in labels if x not in octagon_labels]
        sigma_lab: dict[int, int] = {}
        tau_lab: dict[int, int] = {}
        for k, b in enumerate(bases):
            c = corners[b]
            (s1, t1), (s2, t2) = _OCTAGON_ROLES[f]
            x = n - f_count + k
            for table, (src, dst) in ((sigma_lab, (c[s1], c[t1])), (tau_lab, (c[s2], c[t2]))):
                if dst in table:
                    raise InterchangeError(f"edge ending at {dst} labeled twice along {f}")
                table[dst] = x
        rest_targets = [x for x in top if x not in vp[f]]
        low = list(range(n - v, n - ef))
        sigma_fixed = dict(sigma_lab)
        tau_fixed = dict(tau_lab)
        for table in (sigma_fixed, tau_fixed):
            remaining = [t for _, t in f_edges if t not in table]
            for t, x in zip(remaining, spare):
                table[t] = x
        plus_s = _complete_bijection(n, top, sigma_fixed, low)
        plus_t = _complete_bijection(n, top, tau_fixed, low)
        if [plus_s[x] for x in rest_targets] != [plus_t[x] for x in rest_targets]:
            raise InterchangeError("sigma and tau disagree off the edge targets")
        edge_map = dict(f_edges)
        free_src = sorted(x for x in top if x not in vm[f])
        free_dst = sorted(x for x in top if x not in vp[f])
        g = list(range(n))
        for s, t in edge_map.items():
            g[s] = t
        for s, t in zip(free_src, free_dst):
            g[s] = t
        g0[f] = tuple(g)
        sp[f], tp[f] = plus_s, plus_t
        sm[f], tm[f] = compose(plus_s, g0[f]), compose(plus_t, g0[f])
    fam = InterchangeFamily(n, v, f_count, ecount, point, sp, sm, tp, tm, g0, vp, vm)
    bad = fam.violations()
    if bad:
        raise InterchangeError(f"constructed family fails: {', '.join(bad)}")
    return fam


# --- products of matrix coefficients -------------------------------------

# Factor i pairs (out letter, out uses t?) with (in letter, in uses t?) and
# r-signs: "+"/"-" select r^+ or r^-.
_FACTORS = (
    (("b", "-", "s"), ("a", "+", "s")),
    (("a", "+", "t"), ("b", "+", "s")),
    (("b", "+", "t"), ("a", "-", "t")),
    (("c", "-", "s"), ("b", "-", "t")),
    (("d", "-", "s"), ("c", "+", "s")),
    (("c", "+", "t"), ("d", "+", "s")),
    (("d", "+", "t"), ("c", "-", "t")),
    (("a", "-", "s"), ("d", "-", "t")),
)
_EINSUM = "fgac,adeg,ehbd,jkfh,noik,ilmo,mpjl,bcnp->"


@dataclass(frozen=True)
class ShapeData:
    """Shapes nu, {mu_f}, lam with the tableaux of each layer."""

    nu: Partition
    mus: Mapping[str, Partition]
    lam: Partition

    def validate(self, fam: InterchangeFamily):
        n, v, fc = fam.n, fam.num_vertices, fam.num_octagons
        if sum(self.nu) != n - v or sum(self.lam) != n - fc:
            raise ValueError("shape sizes do not match the family")
        for f in LETTERS:
            mu = self.mus[f]
            if sum(mu) != n - fam.edges_by_letter[f]:
                raise ValueError(f"mu_{f} has the wrong size")
            if not (SkewShape(mu, self.nu) and SkewShape(self.lam, mu)):
                raise ValueError("shapes are not nested")


def _restricted(p: Perm, size: int) -> Perm:
    return tuple(p[:size])


def _pair_index(data: ShapeData, f: str) -> np.ndarray:
    """index[r, s] = position of the tableau r joined with s in the basis of lam/nu."""
    big = _tableau_index(SkewShape(data.lam, data.nu))
    rs = skew_tableaux(SkewShape(data.mus[f], data.nu))
    ss = skew_tableaux(SkewShape(data.lam, data.mus[f]))
    out = np.empty((len(rs), len(ss)), dtype=np.int64)
    for i, r in enumerate(rs):
        for j, s in enumerate(ss):
            out[i, j] = big[join_tableaux(r, s)]
    return out


def factor_matrices(fam: InterchangeFamily, data: ShapeData) -> list[np.ndarray]:
    size = fam.n - fam.num_octagons
    shape = SkewShape(data.lam, data.nu)
    return [skew_matrix(shape, _restricted(p, size)).entries for p in fam.products()]


def upsilon(fam: InterchangeFamily, data: ShapeData) -> float:
    """Sum of the product of matrix coefficients over all tableau tuples."""
    mats = factor_matrices(fam, data)
    pairs = {f: _pair_index(data, f) for f in LETTERS}
    tensors = []
    for mat, ((fo, _, _), (fi, _, _)) in zip(mats, _FACTORS):
        po, pi = pairs[fo], pairs[fi]
        sub = mat[np.ix_(po.ravel(), pi.ravel())]
        tensors.append(sub.reshape(po.shape + pi.shape))
    return float(np.einsum(_EINSUM, *tensors, optimize="greedy"))


@dataclass(frozen=True)
class TableauTuple:
    """r^+_f, r^-_f in Tab(mu_f/nu) and s_f, t_f in Tab(lam/mu_f)."""

    r_plus: Mapping[str, tuple]
    r_minus: Mapping[str, tuple]
    s: Mapping[str, tuple]
    t: Mapping[str, tuple]

    def joined(self, f: str, sign: str, upper: str) -> tuple:
        r = self.r_plus[f] if sign == "+" else self.r_minus[f]
        u = self.s[f] if upper == "s" else self.t[f]
        return join_tableaux(r, u)


def m_product(fam: InterchangeFamily, data: ShapeData, tabs: TableauTuple) -> float:
    data.validate(fam)
    mats = factor_matrices(fam, data)
    index = _tableau_index(SkewShape(data.lam, data.nu))
    value = 1.0
    for mat, (out, inn) in zip(mats, _FACTORS):
        value *= mat[index[tabs.joined(*out)], index[tabs.joined(*inn)]]
    return value


def m_product_dense(fam: InterchangeFamily, data: ShapeData, tabs: TableauTuple, nu_tableau: tuple | None = None) -> float:
    """Same product read off the full matrices of lam, with a fixed tableau of nu underneath."""
    size = fam.n - fam.num_octagons
    if nu_tableau is None:
        nu_tableau = skew_tableaux(SkewShape(data.nu))[0]
    full = SkewShape(data.lam)
    index = _tableau_index(full)
    value = 1.0
    for p, (out, inn) in zip(fam.products(), _FACTORS):
        mat = rep_matrix(data.lam, _restricted(p, size)).entries
        row = index[join_tableaux(nu_tableau, tabs.joined(*out))]
        col = index[join_tableaux(nu_tableau, tabs.joined(*inn))]
        value *= mat[row, col]
    return value


def d_top(fam: InterchangeFamily, data: ShapeData, tabs: TableauTuple) -> int:
    total = 0
    for p, (out, inn) in zip(fam.products(), _FACTORS):
        moved = {p[x] for x in top_row(tabs.joined(*inn))}
        total += len(moved - top_row(tabs.joined(*out)))
    return total


def tableau_tuples(data: ShapeData):
    """All tableau tuples for the given shapes."""
    per_letter = []
    for f in LETTERS:
        rs = skew_tableaux(SkewShape(data.mus[f], data.nu))
        ss = skew_tableaux(SkewShape(data.lam, data.mus[f]))
        per_letter.append(list(itertools.product(rs, rs, ss, ss)))
    for combo in itertools.product(*per_letter):
        yield TableauTuple(
            {f: c[0] for f, c in zip(LETTERS, combo)},
            {f: c[1] for f, c in zip(LETTERS, combo)},
            {f: c[2] for f, c in zip(LETTERS, combo)},
            {f: c[3] for f, c in zip(LETTERS, combo)},
        )


# --- the sums over shapes ------------------------------------------------


def shape_triples(fam: InterchangeFamily, nu_filter=None):
    """All (nu, {mu_f}, lam) in the summation range."""
    n, v, fc = fam.n, fam.num_vertices, fam.num_octagons
    for nu in enumerate_partitions(n - v):
        if nu_filter is not None and not nu_filter(nu):
            continue
        for lam in grow(nu, v - fc):
            choices = []
            for f in LETTERS:
                ef = fam.edges_by_letter[f]
                ups = set(grow(nu, v - ef))
                choices.append([mu for mu in shrink(lam, ef - fc) if mu in ups])
            for mus in itertools.product(*choices):
                yield ShapeData(nu, dict(zip(LETTERS, mus)), lam)


def xi_n(Y: TiledSurface, n: int, nu_filter=None, fam: InterchangeFamily | None = None) -> float:
    fam = fam or construct_interchange(Y, n)
    total = 0.0
    for data in shape_triples(fam, nu_filter):
        weight = hook_dim(data.lam) * hook_dim(data.nu)
        for f in LETTERS:
            weight /= hook_dim(data.mus[f])
        total += weight * upsilon(fam, data)
    return total


def xi_top_term(Y: TiledSurface, n: int) -> float:
    """Xi restricted to nu = (n - v), computed as a character-weighted sum over lam of size n."""
    fam = construct_interchange(Y, n)
    v, fc = fam.num_vertices, fam.num_octagons
    nu = (n - v,) if n > v else ()
    inner: dict[Partition, float] = {}
    for data in shape_triples(fam, lambda p: p == nu):
        weight = 1.0
        for f in LETTERS:
            weight /= hook_dim(data.mus[f])
        inner[data.lam] = inner.get(data.lam, 0.0) + weight * upsilon(fam, data)
    total = 0.0
    for lam in enumerate_partitions(n):
        theta = 0.0
        for lam_small in shrink(lam, fc):
            if lam_small in inner:
                theta += skew_dim(SkewShape(lam, lam_small)) * inner[lam_small]
        total += hook_dim(lam) * theta
    return total / math.perm(n, fc)


# --- trace of the contraction operator -----------------------------------


def _b_lambda_matrix(dim: int) -> np.ndarray:
    """Explicit matrix of the contraction operator on the 8-fold tensor power."""
    size = dim**8
    mat = np.zeros((size, size))
    for v in itertools.product(range(dim), repeat=8):
        v1, v2, v3, v4, v5, v6, v7, v8 = v
        if v3 != v2 or v7 != v6:
            continue
        for w2, w4, w6, w8 in itertools.product(range(dim), repeat=4):
            w = (w8, w2, v1, w4, w4, w6, v5, w8)
            if w2 != v4 or w6 != v8:
                continue
            row = np.ravel_multi_index(w, (dim,) * 8)
            col = np.ravel_multi_index(v, (dim,) * 8)
            mat[row, col] = 1.0
    return mat


def b_lambda_trace_identity(lam: Partition, gs: Sequence[Sequence[int]], max_dim: int = 2) -> tuple[float, float]:
    """Trace of the contraction operator composed with (g_1..g_8) and the character it should equal."""
    if len(gs) != 8:
        raise ValueError("eight permutations required")
    dim = hook_dim(lam)
    if dim > max_dim:
        raise ResourceLimitError(f"dimension {dim} exceeds cap {max_dim}")
    mats = [rep_matrix(lam, g).entries for g in gs]
    op = mats[0]
    for m in mats[1:]:
        op = np.kron(op, m)
    lhs = float(np.trace(_b_lambda_matrix(dim) @ op))
    g1, g2, g3, g4, g5, g6, g7, g8 = (tuple(g) for g in gs)
    word = compose(inverse(g8), inverse(g6), g7, g5, inverse(g4), inverse(g2), g3, g1)
    rhs = float(character(lam, cycle_type(word)))
    return lhs, rhs


def b_lambda_trace_contracted(lam: Partition, gs: Sequence[Sequence[int]]) -> float:
    """Linear-size evaluation of the same trace after substituting the deltas."""
    r = [rep_matrix(lam, g).entries for g in gs]
    return float(np.einsum("ah,bc,ba,cd,ed,fg,fe,gh->", *r))
