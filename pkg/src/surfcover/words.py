"""Words in the free group on a, b, c, d.

Inverses are written in upper case, so ``"abAB"`` is the commutator of a and b.
"""

from __future__ import annotations

LETTERS = "abcd"
ALPHABET = set("abcdABCD")

# The surface relator [a,b][c,d] read as a cyclic word.
RELATOR = "abABcdCD"


class WordError(ValueError):
    """Raised for malformed words or words that reduce to the identity."""


def inverse_letter(x: str) -> str:
    return x.swapcase()


def parse_word(text: str) -> str:
    """Strip whitespace and validate the alphabet."""
    word = "".join(text.split())
    bad = sorted(set(word) - ALPHABET)
    if bad:
        raise WordError(f"letters outside abcdABCD: {''.join(bad)}")
    return word


def free_reduce(word: str) -> str:
    out: list[str] = []
    for x in word:
        if out and out[-1] == inverse_letter(x):
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def cyclic_reduce(word: str) -> str:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == inverse_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


def inverse_word(word: str) -> str:
    return "".join(inverse_letter(x) for x in reversed(word))


def rotations(word: str) -> list[str]:
    return [word[i:] + word[:i] for i in range(len(word))]


def cyclic_class_key(word: str) -> str:
    """Smallest rotation of the word or of its inverse.

    Two cyclically reduced words with the same key give the same annular
    surface up to the choice of base vertex and orientation of traversal.
    """
    w = cyclic_reduce(word)
    if not w:
        return ""
    return min(rotations(w) + rotations(inverse_word(w)))


def cyclically_reduced_words(max_length: int, min_length: int = 1) -> list[str]:
    """All cyclically reduced words with length in the given range, sorted."""
    letters = sorted(ALPHABET)
    found: list[str] = []
    frontier = [""]
    for length in range(1, max_length + 1):
        grown = []
        for w in frontier:
            for x in letters:
                if w and w[-1] == inverse_letter(x):
                    continue
                grown.append(w + x)
        frontier = grown
        if length >= min_length:
            found.extend(w for w in frontier if w[0] != inverse_letter(w[-1]) or length == 1)
    return sorted(found, key=lambda w: (len(w), w))


def word_classes(max_length: int) -> list[str]:
    """One representative per cyclic class (rotation and inversion) up to a length."""
    keys = {cyclic_class_key(w) for w in cyclically_reduced_words(max_length)}
    return sorted(keys, key=lambda w: (len(w), w))
