"""Command-line entry point (``entvol``)."""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import hypvol, penner, survey, torus
from .errors import EntvolError, NotPrimitive, ParseError, NotPseudoAnosov, SolverError
from .words import parse

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3


@dataclass(frozen=True)
class Config:
    tol: float = 1e-12
    residual_tol: float = 1e-9
    max_iter: int = 500
    jobs: int = 1
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")

    def solver(self) -> hypvol.SolverConfig:
        return hypvol.SolverConfig(tol=self.tol, residual_tol=self.residual_tol,
                                   max_iter=self.max_iter)


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _config(args) -> Config:
    return Config(tol=args.tol, residual_tol=args.residual_tol, max_iter=args.max_iter,
                  jobs=getattr(args, "jobs", None) or 1,
                  out=getattr(args, "out", None), format=getattr(args, "format", "csv"))


def cmd_entropy(args, out):
    w = parse(args.word)
    m = torus.word_matrix(w)
    print(f"word {w.canonical}", file=out)
    print(f"trace {m.trace}", file=out)
    print(f"dilatation {fmt(torus.dilatation(w))}", file=out)
    print(f"entropy {fmt(torus.entropy(w))}", file=out)


def cmd_volume(args, out):
    w = parse(args.word)
    res = hypvol.volume(w, _config(args).solver())
    print(f"word {w.canonical}", file=out)
    print(f"volume {fmt(res.volume)}", file=out)
    print(f"residual {res.residual:.3e}", file=out)
    print(f"min_angle {fmt(res.min_angle)}", file=out)
    print(f"iterations {res.iterations}", file=out)


def cmd_ratio(args, out):
    w = parse(args.word)
    ent = torus.entropy(w)
    vol = hypvol.volume(w, _config(args).solver()).volume
    print(f"ratio {fmt(ent / vol)}", file=out)
    print(f"entropy {fmt(ent)}", file=out)
    print(f"volume {fmt(vol)}", file=out)


def cmd_survey(args, out):
    cfg = _config(args)
    records = survey.run(args.min_len, args.max_len, cfg.solver(), jobs=cfg.jobs)
    survey.emit(records, args.out, cfg.format)
    good = [r for r in records if r.ok]
    if args.stats_out:
        survey.emit_stats(survey.stats(records), args.stats_out)
    print(f"records {len(records)} failed {len(records) - len(good)} -> {args.out}", file=out)
    if good:
        best = survey.stats(records)[-1]
        print(f"I_{best.k} {fmt(best.I_k)} at {best.argmin_ratio}", file=out)
    return EXIT_SOLVER if len(good) < len(records) else EXIT_OK


def cmd_scan_block1(args, out):
    rows, best = survey.scan_block1(args.max_mn, _config(args).solver())
    print("m n dilatation volume ratio", file=out)
    for m, n, lam, vol, r in rows:
        print(f"{m} {n} {fmt(lam)} {fmt(vol)} {fmt(r)}", file=out)
    print(f"min_ratio {fmt(best[4])} at m={best[0]} n={best[1]}", file=out)


def cmd_penner(args, out):
    try:
        sys_ = penner.IntersectionSystem.from_file(args.system)
    except OSError as exc:
        raise ParseError(f"cannot read system file: {exc}") from None
    w = penner.TwistWord.parse(args.word)
    try:
        penner.validate_pA(w, sys_)
    except IndexError as exc:
        raise ParseError(str(exc)) from None
    M = penner.word_product(sys_, w)
    lam, left, right = penner.spectral_radius(M)
    print(f"word {w}", file=out)
    print("matrix " + "; ".join(" ".join(map(str, r)) for r in M.entries), file=out)
    print(f"dilatation {fmt(lam)}", file=out)
    print(f"entropy {fmt(math.log(lam))}", file=out)
    if args.family_k:
        for k, lk in penner.family(sys_, w, args.family_k):
            print(f"family {k} {fmt(lk)}", file=out)


def cmd_constants(args, out):
    print(f"v3 {fmt(hypvol.V3)}", file=out)
    print(f"v8 {fmt(hypvol.V8)}", file=out)
    print(f"thm52_bound {fmt(hypvol.RATIO_LOWER_BOUND)}", file=out)
    print(f"block1_bound {fmt(hypvol.BLOCK1_BOUND)}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entvol", description=(
        "Entropy and mapping-torus volume of pseudo-Anosov maps of the "
        "once-punctured torus, and Penner-construction dilatations."))
    sub = p.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--tol", type=float, default=1e-12, help="projected gradient tolerance")
    solver.add_argument("--residual-tol", type=float, default=1e-9)
    solver.add_argument("--max-iter", type=int, default=500)

    for name, fn, helptext in (("entropy", cmd_entropy, "dilatation and entropy"),
                               ("volume", cmd_volume, "hyperbolic volume"),
                               ("ratio", cmd_ratio, "entropy / volume")):
        sp = sub.add_parser(name, parents=[solver], help=helptext)
        sp.add_argument("word")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("survey", parents=[solver], help="all classes in a length range")
    sp.add_argument("--min-len", type=int, default=2)
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("csv", "scatter"), default="csv")
    sp.add_argument("--stats-out", help="also write running minima per length")
    sp.add_argument("--jobs", type=int, default=survey.default_jobs())
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("scan-block1", parents=[solver], help="scan L^m R^n, mn <= M")
    sp.add_argument("--max-mn", type=int, default=31)
    sp.set_defaults(func=cmd_scan_block1)

    sp = sub.add_parser("penner", help="Penner construction dilatation")
    sp.add_argument("--system", required=True, help="intersection system file")
    sp.add_argument("--word", required=True, help='twist word, e.g. "A1 B1"')
    sp.add_argument("--family-k", type=int, default=0)
    sp.set_defaults(func=cmd_penner)

    sp = sub.add_parser("constants", help="v3, v8 and the bounds built from them")
    sp.set_defaults(func=cmd_constants)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
            raise ValueError("--jobs must be >= 1")
        code = args.func(args, out)
    except (ParseError, NotPseudoAnosov, NotPrimitive, ValueError) as exc:
        print(f"entvol {args.command}: input error: {exc}", file=err)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"entvol {args.command}: solver failure: {exc}", file=err)
        return EXIT_SOLVER
    except EntvolError as exc:
        print(f"entvol {args.command}: {exc}", file=err)
        return EXIT_SOLVER
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
