"""Exact combinatorics of partitions, Young diagrams and standard tableaux.

Partitions are plain tuples of positive integers in weakly decreasing order.
Tableau entries are 0-based: a standard tableau of the skew shape
``outer/inner`` is filled with ``|inner|, ..., |outer| - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from typing import Iterator

Partition = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


def is_partition(parts) -> bool:
    return all(p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def as_partition(parts) -> Partition:
    lam = tuple(int(p) for p in parts if p != 0)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {parts}")
    return lam


@cache
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(remaining: int, largest: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def size(lam: Partition) -> int:
    return sum(lam)


def outside_first_row(lam: Partition) -> int:
    """b_lambda: number of boxes below the first row."""
    return size(lam) - (lam[0] if lam else 0)


def outside_first_column(lam: Partition) -> int:
    """Number of boxes to the right of the first column."""
    return size(lam) - len(lam)


def contains(outer: Partition, inner: Partition) -> bool:
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


@cache
def hook_dim(lam: Partition) -> int:
    """Number of standard tableaux of shape lam, by the hook-length formula."""
    n = size(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    dim, rem = divmod(math.factorial(n), hooks)
    assert rem == 0
    return dim


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", as_partition(self.outer))
        object.__setattr__(self, "inner", as_partition(self.inner))
        if not contains(self.outer, self.inner):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    @property
    def size(self) -> int:
        return size(self.outer) - size(self.inner)

    @property
    def offset(self) -> int:
        """Smallest entry of a standard tableau of this shape."""
        return size(self.inner)

    def row_start(self, i: int) -> int:
        return self.inner[i] if i < len(self.inner) else 0

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.outer) for j in range(self.row_start(i), row)]

    @property
    def outside_first_row(self) -> int:
        return outside_first_row(self.outer) - outside_first_row(self.inner)

    @property
    def outside_first_column(self) -> int:
        return outside_first_column(self.outer) - outside_first_column(self.inner)


def _addable_rows(current: Partition, outer: Partition) -> list[int]:
    """Rows where a box can be added to `current` staying inside `outer`."""
    rows = []
    for i in range(len(outer)):
        have = current[i] if i < len(current) else 0
        if have >= outer[i]:
            continue
        if i == 0:
            above = math.inf
        else:
            above = current[i - 1] if i - 1 < len(current) else 0
        if have < above:
            rows.append(i)
    return rows


def _add_box(current: Partition, i: int) -> Partition:
    parts = list(current) + [0] * (i + 1 - len(current))
    parts[i] += 1
    return tuple(p for p in parts if p)


@lru_cache(maxsize=None)
def _count_fillings(current: Partition, outer: Partition) -> int:
    if current == outer:
        return 1
    return sum(_count_fillings(_add_box(current, i), outer) for i in _addable_rows(current, outer))


def skew_dim(shape: SkewShape) -> int:
    """Number of standard tableaux of a skew shape, memoized on the frontier."""
    return _count_fillings(shape.inner, shape.outer)


@cache
def skew_tableaux(shape: SkewShape) -> tuple[Tableau, ...]:
    """Standard tableaux of the shape, sorted by row-reading word.

    A tableau is stored by rows: row i holds the entries of columns
    ``inner[i], ..., outer[i]-1``.
    """
    out: list[Tableau] = []
    rows = len(shape.outer)

    def fill(current: Partition, entry: int, cells: dict):
        if current == shape.outer:
            table = tuple(
                tuple(cells[(i, j)] for j in range(shape.row_start(i), shape.outer[i]))
                for i in range(rows)
            )
            out.append(table)
            return
        for i in _addable_rows(current, shape.outer):
            j = current[i] if i < len(current) else 0
            cells[(i, j)] = entry
            fill(_add_box(current, i), entry + 1, cells)
            del cells[(i, j)]

    fill(shape.inner, shape.offset, {})
    out.sort(key=reading_word)
    return tuple(out)


def reading_word(t: Tableau) -> tuple[int, ...]:
    return tuple(x for row in t for x in row)


def tableau_positions(shape: SkewShape, t: Tableau) -> dict[int, tuple[int, int]]:
    """Map entry -> (row, column) cell."""
    pos = {}
    for i, row in enumerate(t):
        for k, x in enumerate(row):
            pos[x] = (i, shape.row_start(i) + k)
    return pos


def top_row(t: Tableau) -> frozenset[int]:
    return frozenset(t[0]) if t else frozenset()


def join_tableaux(lower: Tableau, upper: Tableau) -> Tableau:
    """Union of a tableau of mu/nu and a tableau of lam/mu as a tableau of lam/nu."""
    rows = max(len(lower), len(upper))
    lower = tuple(lower) + ((),) * (rows - len(lower))
    upper = tuple(upper) + ((),) * (rows - len(upper))
    return tuple(lower[i] + upper[i] for i in range(rows))


def grow(lam: Partition, k: int, max_rows: int | None = None) -> list[Partition]:
    """Partitions obtained from lam by adding k boxes."""
    found = {lam}
    for _ in range(k):
        nxt = set()
        for p in found:
            for i in range(len(p) + 1):
                if i == 0 or p[i - 1] > (p[i] if i < len(p) else 0):
                    q = _add_box(p, i)
                    if max_rows is None or len(q) <= max_rows:
                        nxt.add(q)
        found = nxt
    order = {p: r for r, p in enumerate(enumerate_partitions(size(lam) + k))}
    return sorted(found, key=order.__getitem__)


def shrink(lam: Partition, k: int) -> list[Partition]:
    """Partitions obtained from lam by removing k boxes."""
    found = {lam}
    for _ in range(k):
        nxt = set()
        for p in found:
            for i in range(len(p)):
                below = p[i + 1] if i + 1 < len(p) else 0
                if p[i] > below:
                    parts = list(p)
                    parts[i] -= 1
                    nxt.add(tuple(x for x in parts if x))
        found = nxt
    order = {p: r for r, p in enumerate(enumerate_partitions(size(lam) - k))}
    return sorted(found, key=order.__getitem__)


def witten_zeta(n: int, s) -> Fraction | float:
    """Sum of d_lambda^{-s} over partitions of n; exact for integer s."""
    if n < 1:
        raise ValueError("n must be positive")
    s_frac = Fraction(s)
    if s_frac <= 0:
        raise ValueError("s must be positive")
    dims = [hook_dim(lam) for lam in enumerate_partitions(n)]
    if s_frac.denominator == 1:
        k = int(s_frac)
        return sum((Fraction(1, d**k) for d in dims), Fraction(0))
    return math.fsum(d ** (-float(s_frac)) for d in dims)


def restricted_zeta(n: int, b: int, s: int) -> Fraction:
    """Zeta sum restricted to partitions with at least b boxes outside both the first row and column."""
    if n < 1:
        raise ValueError("n must be positive")
    total = Fraction(0)
    for lam in enumerate_partitions(n):
        if outside_first_row(lam) >= b and outside_first_column(lam) >= b:
            total += Fraction(1, hook_dim(lam) ** s)
    return total


def mednykh_count(n: int, g: int = 2) -> int:
    """|Hom(surface group of genus g, S_n)| = (n!)^{2g-1} zeta(2g-2)."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    if g == 1:
        # zeta at 0 counts the partitions
        return math.factorial(n) * len(enumerate_partitions(n))
    value = Fraction(math.factorial(n)) ** (2 * g - 1) * witten_zeta(n, 2 * g - 2)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral homomorphism count {value}")
    return int(value)


def pochhammer(n: int, q: int) -> int:
    """Falling factorial n (n-1) ... (n-q+1)."""
    if q < 0 or q > n:
        raise ValueError(f"falling factorial ({n})_{q} needs 0 <= q <= n")
    out = 1
    for i in range(q):
        out *= n - i
    return out


def falling(n: int, q: int) -> int:
    """Falling factorial that is 0 when q > n instead of raising."""
    if q > n:
        return 0
    return pochhammer(n, q)


# --- characters -------------------------------------------------------------


def _beta_set(lam: Partition, length: int) -> tuple[int, ...]:
    parts = list(lam) + [0] * (length - len(lam))
    return tuple(parts[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in beta:
            continue
        sign = (-1) ** sum(1 for z in beta if y < z < x)
        total += sign * _mn((beta - {x}) | {y}, rest)
    return total


def character(lam: Partition, rho: tuple[int, ...]) -> int:
    """Irreducible character at cycle type rho, by the Murnaghan-Nakayama rule."""
    if size(lam) != sum(rho):
        raise ValueError("shape and cycle type have different sizes")
    length = len(lam) + 1
    return _mn(frozenset(_beta_set(lam, length)), tuple(sorted(rho, reverse=True)))


def class_size(rho: tuple[int, ...]) -> int:
    n = sum(rho)
    denom = 1
    counts: dict[int, int] = {}
    for r in rho:
        counts[r] = counts.get(r, 0) + 1
    for r, m in counts.items():
        denom *= r**m * math.factorial(m)
    return math.factorial(n) // denom
