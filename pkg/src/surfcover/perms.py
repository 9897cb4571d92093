"""Permutations of {0, ..., n-1} stored as tuples of images.

Permutations act on the left: ``compose(p, q)`` is the map ``i -> p[q[i]]``.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(*perms: Sequence[int]) -> Perm:
    """Left-to-right composition of functions: ``compose(p, q, r) = p o q o r``."""
    result = list(perms[-1])
    for p in reversed(perms[:-1]):
        result = [p[i] for i in result]
    return tuple(result)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    image = list(range(n))
    for cycle in cycles:
        for k, x in enumerate(cycle):
            image[x] = cycle[(k + 1) % len(cycle)]
    if not is_permutation(image):
        raise ValueError("cycles are not disjoint")
    return tuple(image)


def cycles(p: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(cyc)
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def fixed_points(p: Sequence[int]) -> int:
    return sum(1 for i, j in enumerate(p) if i == j)


def all_perms(n: int) -> list[Perm]:
    return list(itertools.permutations(range(n)))


def random_perm(n: int, rng: random.Random) -> Perm:
    image = list(range(n))
    rng.shuffle(image)
    return tuple(image)


def adjacent_word(p: Sequence[int]) -> list[int]:
    """Indices k with ``p = s_{k_1} o s_{k_2} o ...`` where s_k swaps k and k+1.

    Obtained by bubble-sorting the one-line notation: swapping positions k, k+1
    of the array of p replaces p by p o s_k.
    """
    arr = list(p)
    swaps = []
    n = len(arr)
    for end in range(n - 1, 0, -1):
        for k in range(end):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                swaps.append(k)
    # p o s_{j1} o ... o s_{jm} = id, so p = s_{jm} o ... o s_{j1}
    return swaps[::-1]


def word_image(word: str, perms: dict[str, Sequence[int]], n: int) -> Perm:
    """Permutation obtained by following the word letter by letter.

    ``perms[f]`` sends i to the end of the f-edge starting at i; an upper-case
    letter follows the edge backwards. The result maps a start point to the end
    of the path spelled by the word, so its fixed points are the closed paths.
    """
    current = list(range(n))
    inverses = {}
    for x in word:
        f = x.lower()
        if x == f:
            p = perms[f]
        else:
            if f not in inverses:
                inverses[f] = inverse(perms[f])
            p = inverses[f]
        current = [p[i] for i in current]
    return tuple(current)
