"""Penner's construction: products of positive twists along A-curves and
negative twists along B-curves, acting on per-curve weights.

Coordinates are ordered ``a_1..a_m, b_1..b_n``. A twist along ``a_i`` adds
``i(a_i, b_j) * w(b_j)`` to ``w(a_i)``; a negative twist along ``b_j`` adds
``i(a_i, b_j) * w(a_i)`` to ``w(b_j)``. Every such matrix is nonnegative and
unimodular, and products of them are Perron-Frobenius once every generator
occurs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NotPrimitive, NotPseudoAnosov, ParseError


@dataclass(frozen=True)
class IntersectionSystem:
    """Intersection numbers ``inter[i][j] = i(a_i, b_j)``.

    That ``A u B`` fills the surface is the caller's responsibility.
    """

    inter: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.inter)
        object.__setattr__(self, "inter", rows)
        if not rows or not rows[0]:
            raise ParseError("intersection matrix must be at least 1x1")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("intersection matrix rows have unequal length")
        if any(x < 0 for r in rows for x in r):
            raise ParseError("intersection numbers must be nonnegative")
        if any(not any(r) for r in rows):
            raise ParseError("every A-curve must meet some B-curve")
        if any(not any(r[j] for r in rows) for j in range(len(rows[0]))):
            raise ParseError("every B-curve must meet some A-curve")

    @property
    def m(self) -> int:
        return len(self.inter)

    @property
    def n(self) -> int:
        return len(self.inter[0])

    @property
    def dim(self) -> int:
        return self.m + self.n

    @classmethod
    def from_text(cls, text: str) -> "IntersectionSystem":
        """Parse ``"m n"`` then ``m`` rows of ``n`` integers."""
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        try:
            m, n = (int(x) for x in lines[0])
            rows = [[int(x) for x in ln] for ln in lines[1:]]
        except (ValueError, IndexError) as exc:
            raise ParseError(f"malformed intersection system: {exc}") from None
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ParseError(f"expected {m} rows of {n} integers")
        return cls(tuple(map(tuple, rows)))

    @classmethod
    def from_file(cls, path) -> "IntersectionSystem":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        body = "\n".join(" ".join(map(str, r)) for r in self.inter)
        return f"{self.m} {self.n}\n{body}\n"


TORUS_SYSTEM = IntersectionSystem(((1,),))

_TOKEN = re.compile(r"^([AB])(\d+)$")


@dataclass(frozen=True)
class TwistWord:
    """Tokens ``(kind, index)`` with ``kind`` in {"A", "B"}, 1-based index."""

    tokens: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "TwistWord":
        tokens = []
        for tok in text.replace(",", " ").split():
            mt = _TOKEN.match(tok.upper())
            if not mt or int(mt.group(2)) < 1:
                raise ParseError(f"bad twist token {tok!r}; expected A<i> or B<j>")
            tokens.append((mt.group(1), int(mt.group(2))))
        if not tokens:
            raise ParseError("empty twist word")
        return cls(tuple(tokens))

    @classmethod
    def from_lr(cls, letters: str) -> "TwistWord":
        """Translate an L/R word for the torus system (L = A1, R = B1)."""
        return cls(tuple(("A" if c == "L" else "B", 1) for c in letters))

    def __str__(self):
        return " ".join(f"{k}{i}" for k, i in self.tokens)


@dataclass(frozen=True)
class PennerMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "PennerMatrix") -> "PennerMatrix":
        cols = list(zip(*other.entries))
        return PennerMatrix(tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
            for row in self.entries
        ))

    def to_float(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    @classmethod
    def identity(cls, d: int) -> "PennerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))


def twist_matrix(sys: IntersectionSystem, token) -> PennerMatrix:
    kind, idx = token
    d = sys.dim
    rows = [[int(i == j) for j in range(d)] for i in range(d)]
    if kind == "A":
        if not 1 <= idx <= sys.m:
            raise IndexError(f"A{idx} out of range (m={sys.m})")
        i = idx - 1
        for j in range(sys.n):
            rows[i][sys.m + j] += sys.inter[i][j]
    elif kind == "B":
        if not 1 <= idx <= sys.n:
            raise IndexError(f"B{idx} out of range (n={sys.n})")
        j = idx - 1
        for i in range(sys.m):
            rows[sys.m + j][i] += sys.inter[i][j]
    else:
        raise ValueError(f"unknown twist kind {kind!r}")
    return PennerMatrix(tuple(map(tuple, rows)))


def word_product(sys: IntersectionSystem, w: TwistWord | None) -> PennerMatrix:
    out = PennerMatrix.identity(sys.dim)
    for tok in (w.tokens if w is not None else ()):
        out = out @ twist_matrix(sys, tok)
    return out


def missing_generators(w: TwistWord, sys: IntersectionSystem) -> list[str]:
    seen = set(w.tokens)
    return ([f"A{i}" for i in range(1, sys.m + 1) if ("A", i) not in seen]
            + [f"B{j}" for j in range(1, sys.n + 1) if ("B", j) not in seen])


def validate_pA(w: TwistWord, sys: IntersectionSystem) -> None:
    """Raise NotPseudoAnosov unless every generator occurs in ``w``."""
    for k, i in w.tokens:
        if i > (sys.m if k == "A" else sys.n):
            raise IndexError(f"{k}{i} out of range for a {sys.m}x{sys.n} system")
    missing = missing_generators(w, sys)
    if missing:
        raise NotPseudoAnosov(
            "not pseudo-Anosov: missing generator(s) " + ", ".join(missing), missing)


def is_primitive(M) -> bool:
    """True iff some power up to the Wielandt bound ``(d-1)^2 + 1`` is positive."""
    rows = M.entries if isinstance(M, PennerMatrix) else M
    if any(x < 0 for r in rows for x in r):
        return False
    B = np.array([[int(x > 0) for x in r] for r in rows], dtype=np.int64)
    P = B.copy()
    for _ in range((B.shape[0] - 1) ** 2):
        if P.all():
            return True
        P = ((P @ B) > 0).astype(np.int64)
    return bool(P.all())


def _power_vector(A: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    d = A.shape[0]
    x = np.full(d, 1.0 / d)
    lam = 0.0
    for _ in range(max_iter):
        y = A @ x
        s = y.sum()
        y /= s
        if abs(s - lam) <= tol * s and np.abs(y - x).max() <= tol:
            return y
        x, lam = y, s
    raise NotPrimitive(f"power iteration did not settle in {max_iter} steps")


def spectral_radius(M, tol: float = 1e-14, max_iter: int = 10**6):
    """Perron root of a primitive matrix with left and right eigenvectors.

    Returns ``(lam, left, right)``; both vectors positive with unit sum.
    The root is the two-sided Rayleigh quotient ``y^T M x / y^T x``.
    """
    if not is_primitive(M):
        raise NotPrimitive("matrix is not primitive")
    A = M.to_float() if isinstance(M, PennerMatrix) else np.asarray(M, dtype=float)
    scale = A.max()
    A = A / scale
    right = _power_vector(A, tol, max_iter)
    left = _power_vector(A.T, tol, max_iter)
    lam = float(left @ A @ right / (left @ right)) * float(scale)
    return lam, left, right


def dilatation(sys: IntersectionSystem, w: TwistWord) -> float:
    validate_pA(w, sys)
    return spectral_radius(word_product(sys, w))[0]


def family(sys: IntersectionSystem, w: TwistWord, k_max: int) -> list[tuple[int, float]]:
    """Dilatations of ``A1^k w`` for ``k = 1..k_max``; strictly increasing."""
    validate_pA(w, sys)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    base = word_product(sys, w)
    step = twist_matrix(sys, ("A", 1))
    out = []
    cur = base
    for k in range(1, k_max + 1):
        cur = step @ cur
        out.append((k, spectral_radius(cur)[0]))
    for (_, x), (k, y) in zip(out, out[1:]):
        assert y > x, f"family not increasing at k={k}"
    return out
