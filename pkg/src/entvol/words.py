"""Cyclic words in {L, R} naming conjugacy classes of pseudo-Anosov maps of
the once-punctured torus.

A class ``L^m1 R^n1 ... L^ml R^nl`` is unique up to cyclic rotation, so a
word is compared through its lexicographically least rotation (``L < R``).
Reversal and the ``L <-> R`` swap are *not* quotiented out.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotPseudoAnosov, ParseError

ALPHABET = "LR"


def least_rotation(s: str) -> str:
    # O(N^2) is fine for the word lengths used here.
    return min(s[i:] + s[:i] for i in range(len(s)))


@dataclass(frozen=True, eq=False)
class CyclicWord:
    """A mixed cyclic word. ``letters`` keeps the rotation it was given in."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ParseError("empty word")
        bad = set(self.letters) - set(ALPHABET)
        if bad:
            raise ParseError(f"illegal character(s) {''.join(sorted(bad))!r} in word")
        if "L" not in self.letters or "R" not in self.letters:
            raise NotPseudoAnosov("not pseudo-Anosov: word must contain both L and R")

    @cached_property
    def canonical(self) -> str:
        return least_rotation(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    @cached_property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        """Run lengths ``(m_i, n_i)`` of the canonical form."""
        out = []
        s = self.canonical
        i = 0
        while i < len(s):
            j = i
            while j < len(s) and s[j] == "L":
                j += 1
            k = j
            while k < len(s) and s[k] == "R":
                k += 1
            out.append((j - i, k - j))
            i = k
        return tuple(out)

    @property
    def block_length(self) -> int:
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return self.letters

    def __repr__(self):
        return f"CyclicWord({self.letters!r})"


def parse(text: str) -> CyclicWord:
    if text is None or not text.strip():
        raise ParseError("empty word")
    return CyclicWord(text.strip().upper())


def as_word(w) -> CyclicWord:
    return w if isinstance(w, CyclicWord) else parse(w)


def canonicalize(w) -> CyclicWord:
    w = as_word(w)
    return CyclicWord(w.canonical)


def rotate(w, j: int = 1) -> CyclicWord:
    w = as_word(w)
    j %= w.length
    return CyclicWord(w.letters[j:] + w.letters[:j])


def reverse(w) -> CyclicWord:
    return CyclicWord(as_word(w).letters[::-1])


def swap(w) -> CyclicWord:
    return CyclicWord(as_word(w).letters.translate(str.maketrans("LR", "RL")))


def power(w, m: int) -> CyclicWord:
    if m < 1:
        raise ValueError("power requires m >= 1")
    return CyclicWord(as_word(w).letters * m)


def transform(w, kind: str, arg: int | None = None) -> CyclicWord:
    """Dispatch on ``kind`` in {"rotate", "reverse", "swap", "power"}."""
    if kind == "rotate":
        return rotate(w, 1 if arg is None else arg)
    if kind == "reverse":
        return reverse(w)
    if kind == "swap":
        return swap(w)
    if kind == "power":
        return power(w, 2 if arg is None else arg)
    raise ValueError(f"unknown transform {kind!r}")


def _necklaces(n: int):
    # Fredricksen-Kessler-Maiorana: binary necklaces of length n in lex order.
    a = [0] * (n + 1)

    def gen(t, p):
        if t > n:
            if n % p == 0:
                yield tuple(a[1:])
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        if a[t - p] == 0:
            a[t] = 1
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def enumerate_words(min_len: int, max_len: int) -> list[CyclicWord]:
    """All mixed necklaces with ``min_len <= N <= max_len``, sorted by
    (N, lexicographic)."""
    if min_len < 2 or max_len < min_len:
        raise ValueError("need 2 <= min_len <= max_len")
    out = []
    for n in range(min_len, max_len + 1):
        for neck in _necklaces(n):
            if 0 < sum(neck) < n:
                out.append(CyclicWord("".join(ALPHABET[c] for c in neck)))
    return out
