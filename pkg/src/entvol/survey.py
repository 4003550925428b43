"""Batch (volume, entropy) survey over all classes up to a word length."""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import hypvol
from .errors import EntvolError
from .hypvol import V8, SolverConfig
from .torus import GOLDEN_SQ, dilatation_from_trace, entropy_from_trace, word_matrix
from .words import CyclicWord, as_word, enumerate_words

CSV_HEADER = ("word,length,block_length,trace,dilatation,entropy,volume,ratio,"
              "min_angle,residual,iterations")
STATS_HEADER = "k,I_k,lambda_k,vol_k,argmin_ratio,argmin_dil,argmin_vol"


def fmt(x: float) -> str:
    return f"{x:.15g}"


@dataclass(frozen=True)
class SurveyRecord:
    word: str
    length: int
    block_length: int
    trace: str
    dilatation: float
    entropy: float
    volume: float
    ratio: float
    min_angle: float
    residual: float
    iterations: int
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error

    def csv_row(self) -> str:
        vals = [self.word, str(self.length), str(self.block_length), self.trace]
        vals += [fmt(getattr(self, f)) for f in
                 ("dilatation", "entropy", "volume", "ratio", "min_angle", "residual")]
        vals.append(str(self.iterations))
        return ",".join(vals)

    def check(self) -> None:
        """Assert the bounds every record must satisfy."""
        assert self.ratio > hypvol.RATIO_LOWER_BOUND, self.word
        assert 0 < self.volume < 2 * self.block_length * V8, self.word
        assert self.dilatation >= GOLDEN_SQ ** self.block_length * (1 - 1e-12), self.word


def compute_record(w, config: SolverConfig | None = None) -> SurveyRecord:
    w = CyclicWord(as_word(w).canonical)
    tr = word_matrix(w).trace
    lam, ent = dilatation_from_trace(tr), entropy_from_trace(tr)
    try:
        res = hypvol.volume(w, config)
    except EntvolError as exc:
        nan = math.nan
        return SurveyRecord(w.letters, w.length, w.block_length, str(tr), lam, ent,
                            nan, nan, nan, nan, -1, error=f"{type(exc).__name__}: {exc}")
    rec = SurveyRecord(w.letters, w.length, w.block_length, str(tr), lam, ent,
                       res.volume, ent / res.volume, res.min_angle, res.residual,
                       res.iterations)
    rec.check()
    return rec


def _record_task(args):
    return compute_record(*args)


def run(min_len: int, max_len: int, config: SolverConfig | None = None,
        jobs: int = 1) -> list[SurveyRecord]:
    if not 2 <= min_len <= max_len <= 20:
        raise ValueError("need 2 <= min_len <= max_len <= 20")
    words = enumerate_words(min_len, max_len)
    tasks = [(w, config) for w in words]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_record_task, tasks, chunksize=16))
    else:
        records = [_record_task(t) for t in tasks]
    return sorted(records, key=lambda r: (r.length, r.word))


@dataclass(frozen=True)
class StatsRow:
    k: int
    I_k: float
    lambda_k: float
    vol_k: float
    argmin_ratio: str
    argmin_dil: str
    argmin_vol: str


def stats(records) -> list[StatsRow]:
    """Running minima of ratio, dilatation and volume by word length."""
    good = [r for r in records if r.ok]
    if not good:
        raise ValueError("no successful records")
    rows = []
    best = {}
    for k in sorted({r.length for r in good}):
        for r in (r for r in good if r.length == k):
            for key in ("ratio", "dilatation", "volume"):
                val = getattr(r, key)
                # Ties (to rounding) keep the earlier, shorter word.
                if key not in best or val < best[key][0] * (1 - 1e-12):
                    best[key] = (val, r.word)
        rows.append(StatsRow(k, best["ratio"][0], best["dilatation"][0], best["volume"][0],
                             best["ratio"][1], best["dilatation"][1], best["volume"][1]))
    return rows


def scan_block1(max_mn: int, config: SolverConfig | None = None):
    """All ``L^m R^n`` with ``m <= n`` and ``m n <= max_mn``.

    Returns ``(rows, best)``; each row is ``(m, n, dilatation, volume,
    ratio)`` and ``best`` is the minimum-ratio row.
    """
    if max_mn < 1:
        raise ValueError("max_mn must be >= 1")
    rows = []
    for m in range(1, math.isqrt(max_mn) + 1):
        for n in range(m, max_mn // m + 1):
            mn = m * n
            lam = (2 + mn + math.sqrt(4 * mn + mn * mn)) / 2
            vol = hypvol.volume("L" * m + "R" * n, config).volume
            rows.append((m, n, lam, vol, math.log(lam) / vol))
    best = min(rows, key=lambda r: r[4])
    return rows, best


def emit(records, path, format: str = "csv") -> None:
    """Write records as CSV or as a ``volume entropy`` scatter table."""
    if format == "csv":
        lines = [CSV_HEADER] + [r.csv_row() for r in records]
    elif format == "scatter":
        good = sorted((r for r in records if r.ok), key=lambda r: (r.volume, r.word))
        lines = [f"{fmt(r.volume)} {fmt(r.entropy)}" for r in good]
    else:
        raise ValueError(f"unknown format {format!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_stats(rows, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(STATS_HEADER + "\n")
        for s in rows:
            fh.write(f"{s.k},{fmt(s.I_k)},{fmt(s.lambda_k)},{fmt(s.vol_k)},"
                     f"{s.argmin_ratio},{s.argmin_dil},{s.argmin_vol}\n")


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


