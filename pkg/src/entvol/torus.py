"""Exact SL(2, Z) action of L/R words and the dilatation it determines."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .words import CyclicWord, as_word

M_L = (1, 1, 0, 1)
M_R = (1, 0, 1, 1)
LETTER_MATRIX = {"L": M_L, "R": M_R}

# (3 + sqrt 5) / 2, the dilatation of LR.
GOLDEN_SQ = (3 + math.sqrt(5)) / 2


def mul2(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@dataclass(frozen=True)
class WordMatrix:
    """Row-major 2x2 integer matrix ``(a b; c d)`` of a word."""

    a: int
    b: int
    c: int
    d: int
    source: str = ""

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def word_matrix(w) -> WordMatrix:
    """Ordered product of ``M_L`` / ``M_R`` over the letters of ``w``.

    Accepts a :class:`CyclicWord` or a raw letter string (single letters
    allowed here, since the matrix is defined for any positive word).
    """
    letters = w.letters if isinstance(w, CyclicWord) else str(w).upper()
    m = (1, 0, 0, 1)
    for ch in letters:
        m = mul2(m, LETTER_MATRIX[ch])
    return WordMatrix(*m, source=letters)


def log_int(n: int) -> float:
    """Natural log of a positive integer of any size."""
    if n <= 0:
        raise ValueError("log_int needs a positive integer")
    shift = max(n.bit_length() - 60, 0)
    return math.log(n >> shift) + shift * math.log(2)


def dilatation_from_trace(t: int) -> float:
    """Larger root of ``x^2 - t x + 1``; raises OverflowError past float range."""
    if t < 3:
        raise ValueError(f"trace {t} is not hyperbolic")
    if t.bit_length() < 500:
        return (t + math.sqrt(t * t - 4)) / 2
    return math.exp(entropy_from_trace(t))


def entropy_from_trace(t: int) -> float:
    if t < 3:
        raise ValueError(f"trace {t} is not hyperbolic")
    if t.bit_length() < 500:
        return math.log(dilatation_from_trace(t))
    # lambda = t (1 + sqrt(1 - x)) / 2 with x = 4 / t^2
    x = 4.0 / float(t) / float(t) if t.bit_length() < 1000 else 0.0
    return log_int(t) + math.log1p(-x / (1 + math.sqrt(1 - x)) / 2)


def dilatation(w) -> float:
    return dilatation_from_trace(word_matrix(as_word(w)).trace)


def entropy(w) -> float:
    return entropy_from_trace(word_matrix(as_word(w)).trace)
